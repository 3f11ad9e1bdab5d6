// Minimal receiver that knows only the data-hiding key. Used by the
// acceptance suite to demonstrate that extraction runs with no image key
// and no recovery code path in the program.
//
// usage: role_extract <marked.pgm> <data-key> <payload-out>

#include <cstdio>
#include <fstream>

#include "rdh/embedder.hpp"

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: %s <marked.pgm> <data-key> <payload-out>\n", argv[0]);
        return 2;
    }
    try {
        const rdh::GrayImage marked = rdh::read_pgm(argv[1]);
        const auto payload = rdh::extract(marked, rdh::SecretKey(argv[2]));
        std::ofstream out(argv[3], std::ios::binary);
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size()));
        return out ? 0 : 5;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}

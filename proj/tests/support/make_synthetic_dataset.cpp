// make_synthetic_dataset <root> [seed] [per_class] [size]

#include <cstdlib>
#include <iostream>

#include "synthetic.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: make_synthetic_dataset <root> [seed] [per_class] [size]\n";
        return 2;
    }
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    const std::size_t per_class = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 20;
    const std::size_t size = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 64;
    try {
        synthetic::write_dataset(argv[1], seed, per_class, size);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

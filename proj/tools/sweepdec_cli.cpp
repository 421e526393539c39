#include <iostream>
#include "sweepdec/lattice.hpp"

int main(int argc, char** argv) {
    using namespace sweepdec;
    if (argc >= 4 && std::string(argv[1]) == "export-lattice") {
        auto g = make_lattice(family_from_name(argv[2]), std::atoi(argv[3]));
        g.write_export(std::cout);
        return 0;
    }
    std::cerr << "usage: sweepdec export-lattice <family> <L>\n";
    return 2;
}

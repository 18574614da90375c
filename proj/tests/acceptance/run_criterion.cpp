#include <cstdlib>
#include <iostream>
#include <string>

#include "momentlab/acceptance.hpp"

int main(int argc, char** argv) {
    using namespace momentlab;
    if (argc != 2) {
        std::cerr << "usage: run_criterion <1.." << acceptance_criterion_count << "|all>\n";
        return 2;
    }
    std::string arg = argv[1];
    int first = 1, last = acceptance_criterion_count;
    if (arg != "all") first = last = std::atoi(argv[1]);
    if (first < 1 || last > acceptance_criterion_count) {
        std::cerr << "criterion out of range: " << arg << "\n";
        return 2;
    }
    bool ok = true;
    for (int id = first; id <= last; ++id) {
        auto r = run_criterion(id);
        std::cout << format_result(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

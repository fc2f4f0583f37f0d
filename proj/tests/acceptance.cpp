#include <cstdlib>
#include <iostream>
#include <string>

#include "hypcheck/acceptance.hpp"

namespace acc = hypcheck::acceptance;

// Usage: acceptance [workers] [criterion ids...]
int main(int argc, char** argv)
{
    acc::Options opt;
    int first = 1;
    if (argc > 1) {
        opt.workers = static_cast<unsigned>(std::max(1, std::atoi(argv[1])));
        first = 2;
    }
    std::vector<int> ids;
    for (int i = first; i < argc; ++i)
        ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        for (int id = 1; id <= static_cast<int>(acc::all_criteria().size()); ++id)
            ids.push_back(id);

    int failed = 0;
    for (int id : ids) {
        auto r = acc::run_guarded(id, opt);
        std::cout << acc::format_line(r) << std::endl;
        failed += r.pass ? 0 : 1;
    }
    std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}

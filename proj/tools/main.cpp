#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << "usage: hyplatt <subcommand> [flags]; try --help\n";
        return 2;
    }
    return hyplatt::run_cli(args, std::cout, std::cerr);
}

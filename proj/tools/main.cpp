#include "config.hpp"
#include "run.hpp"

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        bool help = false;
        std::string help_text;
        const lmgq_cli::RunConfig config = lmgq_cli::parse_config(args, help, help_text);
        if (help) {
            std::printf("%s", help_text.c_str());
            return 0;
        }
        return lmgq_cli::run_command(config);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "lmgq: config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "lmgq: error: %s\n", e.what());
        return 3;
    }
}

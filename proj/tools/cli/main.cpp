#include <iostream>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
    using namespace lhp::cli;
    ExperimentConfig config;
    try {
        config = parse_config(argc, argv);
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return run(config, std::cerr);
}

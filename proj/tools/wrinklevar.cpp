#include <string>
#include <vector>

#include "wrinklevar/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return wrinklevar::run_command(args);
}

#include "cli.hpp"

int main(int argc, char** argv) {
    return poisson_approx::cli::run(argc, argv);
}

#include "cli.hpp"

int main(int argc, char** argv) { return thetarough::cli::run(argc, argv); }

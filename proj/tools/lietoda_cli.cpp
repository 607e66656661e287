#include <lietoda/cli.hpp>

int main(int argc, char** argv) { return lietoda::cli::run(argc, argv); }

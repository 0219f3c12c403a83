#include "sma/harness.hpp"

int main(int argc, char** argv) { return sma::cli_main(argc, argv); }

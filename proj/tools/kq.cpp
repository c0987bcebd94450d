#include "kq/cli.hpp"

int main(int argc, char** argv) { return kq::cli::run(argc, argv); }

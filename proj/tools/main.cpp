#include "cli_app.hpp"

int main(int argc, char** argv) { return ricciflow::cli::run_cli(argc, argv); }

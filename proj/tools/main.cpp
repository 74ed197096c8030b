#include "cli_app.hpp"

int main(int argc, char** argv) { return vlcsec::cli::run(argc, argv); }

#include "emqm/cli_app.hpp"

int main(int argc, char** argv) { return emqm::cli::run(argc, argv); }

#include "swim3d/commands.hpp"

int main(int argc, char ** argv) { return swim3d::cli::run(argc, argv); }

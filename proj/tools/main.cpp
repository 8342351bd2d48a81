#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dyncubic: exact arithmetic for the cubic family z^3 + a z + b"};
  app.require_subcommand(0);
  CLI11_PARSE(app, argc, argv);
  return 0;
}

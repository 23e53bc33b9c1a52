#include "ridgedeconv/cli.hpp"

int main(int argc, char** argv)
{
  return ridgedeconv::run_cli(argc, argv);
}

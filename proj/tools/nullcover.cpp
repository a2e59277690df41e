#include <nullcover/cli.hpp>

#include <iostream>

int main( int argc, char** argv )
{
  return nullcover::run_cli( argc, argv, std::cout, std::cerr );
}

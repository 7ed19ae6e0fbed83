#include "salem/cli.hpp"

int main(int argc, char** argv) { return salem::dispatch(argc, argv); }

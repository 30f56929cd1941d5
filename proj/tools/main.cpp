#include "experiment.hpp"

int main(int argc, char** argv) { return sketchsolve::cli::run(argc, argv); }

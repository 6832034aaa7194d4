#include <iostream>

#include "causal_channels/cli.h"

int main(int argc, char **argv) {
    return causal_channels::dispatch(argc, argv, std::cout, std::cerr);
}

// Copyright 2026 The finconsist Authors
// SPDX-License-Identifier: Apache-2.0

// Regenerates the end-to-end fixture corpus:
//   make_fixtures <dir> [transcripts] [seed]

#include <cstdlib>
#include <iostream>
#include <string>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 4) {
    std::cerr << "usage: make_fixtures <dir> [transcripts] [seed]\n";
    return 2;
  }
  const std::size_t n = argc > 2 ? std::stoul(argv[2]) : 120;
  const std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 2017;
  finconsist::testing::write_corpus(argv[1], finconsist::testing::synthetic_corpus(n, seed));
  std::cout << "wrote " << n << " transcripts to " << argv[1] << '\n';
  return 0;
}

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rcsp/program.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline rcsp::Program load_program(const std::string& name) {
  auto text = read_file(std::string(PROGRAMS_DIR) + "/" + name);
  auto p = rcsp::parse_program(text);
  if (!p.ok()) throw std::runtime_error(name + ": " + p.error().to_text());
  return *p;
}

// Small deterministic generator for property tests.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  bool flip() { return next() & 1; }
};

}  // namespace testutil

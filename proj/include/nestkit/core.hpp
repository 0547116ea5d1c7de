#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nestkit {

// Error codes carried by every exception thrown from the library.
enum class Errc {
  bad_input,
  euler_violation,
  disconnected,
  not_a_cycle,
  cycle_not_simple,
  vertex_not_on_cycle,
  not_a_triangulation,
  internal_invariant_broken,
  mesh_degenerate,
  insufficient_interior_arcs,
  inconsistent_ledger,
  identity_violated,
  nest_too_small,
  too_large,
  layout_degenerate,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void expect(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

// Fixture PRNG. splitmix64, fixed forever so seeds reproduce byte-identical
// graphs on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, bound). bound 0 yields 0.
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

  int range(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace nestkit

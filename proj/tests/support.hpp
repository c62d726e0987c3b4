#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "xtrid/leonard.hpp"

namespace support {

inline xtrid::FieldSpec Q() { return xtrid::FieldSpec::rationals(); }
inline xtrid::FieldSpec GF(std::uint64_t p) { return xtrid::FieldSpec::prime(p); }

inline xtrid::Scalar s(xtrid::FieldSpec spec, long long v) { return xtrid::Scalar(spec, v); }

inline xtrid::LeonardSystem krawtchouk(std::size_t d, xtrid::FieldSpec spec = Q()) {
  return xtrid::validate(xtrid::krawtchouk_family(d, spec));
}

inline xtrid::LeonardSystem affine_krawtchouk(std::size_t d, long long u, long long v,
                                              long long us, long long vs,
                                              xtrid::FieldSpec spec = Q()) {
  return xtrid::validate(xtrid::affine_transform(xtrid::krawtchouk_family(d, spec), s(spec, u),
                                                 s(spec, v), s(spec, us), s(spec, vs)));
}

// Small random integer entries in [-9, 9].
inline xtrid::Matrix random_matrix(std::mt19937_64& rng, xtrid::FieldSpec spec, std::size_t n) {
  std::uniform_int_distribution<int> dist(-9, 9);
  xtrid::Matrix m(spec, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = s(spec, dist(rng));
  return m;
}

inline std::filesystem::path fresh_dir(const std::string& base) {
  std::filesystem::remove_all(base);
  std::filesystem::create_directories(base);
  return base;
}

}  // namespace support

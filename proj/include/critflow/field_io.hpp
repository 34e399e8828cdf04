#pragma once

#include <string>

#include "critflow/field.hpp"

namespace critflow {

// CFF1 container: one ASCII header line
//   CFF1 d=<d> n=<n> L=<decimal> m=<m>\n
// followed by little-endian float64 (re, im) pairs in row-major
// (component, k_1, ..., k_d) order, each k_a running -n/2 .. n/2 - 1.
void write_field(const std::string& path, const SpectralField& f);
SpectralField read_field(const std::string& path);

}  // namespace critflow

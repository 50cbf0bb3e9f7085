#pragma once

// Text formats: coefficient CSV (k1,...,kd,re,im), sample CSV (y1,...,yd,re,im
// with y as exact fractions p/q) and small file helpers.

#include <string>

#include "aniso/ptransform.hpp"

namespace aniso {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip formatting ("%.17g").
std::string format_double(double v);

std::string series_to_csv(const FourierSeries& f);
FourierSeries series_from_csv(const std::string& text);

// One row per pattern point, in pattern order.
std::string samples_to_csv(const SampleVector& s);
// Rows may come in any order but must cover every pattern point exactly once.
SampleVector samples_from_csv(const std::string& text, const PatternPtr& p);

// Rows of G_S(M^T) as CoeffVector CSV (k1,...,kd,re,im).
std::string coeffs_to_csv(const CoeffVector& c);

} // namespace aniso

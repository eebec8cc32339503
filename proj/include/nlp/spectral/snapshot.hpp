#pragma once

#include <filesystem>
#include <iosfwd>

#include "nlp/spectral/field.hpp"

namespace nlp::spectral {

// NLPF1 container: the line "NLPF1", one JSON header line
// {d, n, period, m, time, layout}, then the coefficients as little-endian
// float64 (re, im) pairs, species-major, row-major within a species.
struct Snapshot {
    double time;
    SpectralField field;
};

void write_snapshot(std::ostream& os, const SpectralField& field, double time);
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time);

// Throws std::runtime_error on a malformed or truncated stream.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace nlp::spectral

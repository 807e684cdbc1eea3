#pragma once

// Field serialization: a fixed magic, a JSON header carrying the grid
// metadata (dim, L, N, space, optional seed provenance), then the raw
// samples as little-endian complex doubles (re, im interleaved).

#include <cstdint>
#include <optional>
#include <string>

#include "riesz/grid.hpp"

namespace riesz {

void save_field(const SampledField& f, const std::string& path,
                std::optional<std::uint64_t> seed = std::nullopt);

SampledField load_field(const std::string& path);

}  // namespace riesz

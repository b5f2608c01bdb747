#pragma once

#include <stdexcept>
#include <string>

namespace cmiknn {

/// Ranking is undefined because a column contains exactly tied values.
class TieError : public std::runtime_error {
public:
    explicit TieError(const std::string& what) : std::runtime_error(what) {}
};

/// A nearest-neighbor radius collapsed to zero (duplicate points in the
/// query space). Rank-transform the data with a positive tie-break noise
/// amplitude before estimating.
class DegenerateGeometryError : public std::runtime_error {
public:
    explicit DegenerateGeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmiknn

#pragma once

#include <iosfwd>
#include <string>

#include "ndsr/instance.hpp"

namespace ndsr {

class InstanceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses the JSON instance format. Throws InstanceFormatError with field
/// context on malformed documents, dimension mismatches or negative values.
/// Compact (`shared: true`) cost/weight blocks are expanded to per-commodity
/// form; the shared flags on the Instance remember which form the file used.
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);

/// Canonical serialization: fixed key order, two-space indent, shortest
/// round-trip number rendering. Equal instances produce equal bytes, so the
/// output is usable as a golden file.
std::string save_instance(const Instance& inst);
void save_instance_file(const Instance& inst, const std::string& path);

/// Deep equality on the expanded data (name, topology, costs, weights,
/// limits and the shared flags).
bool instances_equal(const Instance& a, const Instance& b);

}  // namespace ndsr

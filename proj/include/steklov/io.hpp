#pragma once

// Serialization of domains, spectra and certificates. Every number is written
// with 17 significant digits so files round-trip exactly and can be diffed.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "steklov/conformal.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/verification.hpp"

namespace steklov {

inline constexpr const char* domain_schema = "steklov-domain/1";
inline constexpr const char* spectrum_schema = "steklov-spectrum/1";

/// %.17g; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

/// Like json::dump, but floats use format_number (non-finite floats become
/// null). indent < 0 gives a single line.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json domain_to_json(const DiskPairDomain& d);
/// Throws std::invalid_argument on a wrong schema or inconsistent fields.
DiskPairDomain domain_from_json(const nlohmann::json& j);

nlohmann::json spectrum_to_json(const DiskPairDomain& d, const SolverSettings& s,
                                 const SteklovSpectrum& sp);
/// One row per eigenvalue: index, eigenvalue, label, gap, multiplicity.
std::string spectrum_to_csv(const SteklovSpectrum& sp);

/// {name, params, measured, reference, tolerance, verdict, provenance}; the
/// per-check fields are objects keyed by the check description.
nlohmann::json certificate_to_json(const Certificate& c);

/// Writes to a sibling temporary file and renames it over `path`, creating
/// parent directories. Throws std::runtime_error on failure.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace steklov

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stefankpp/enthalpy.hpp"
#include "stefankpp/fb1d.hpp"
#include "stefankpp/semiwave.hpp"

namespace stefankpp::io {

/// Full-precision, locale-independent double formatting ("%.17g").
std::string fmt(double v);

// --- flat key=value files ('#' starts a comment line) ---
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_keyvalues(const std::filesystem::path& file);
KeyValues parse_keyvalues_text(const std::string& text);
void write_keyvalues(const std::filesystem::path& file, const std::vector<std::pair<std::string, std::string>>& kv);

double get_double(const KeyValues& kv, const std::string& key);
double get_double_or(const KeyValues& kv, const std::string& key, double fallback);
long get_long_or(const KeyValues& kv, const std::string& key, long fallback);
std::string get_string_or(const KeyValues& kv, const std::string& key, const std::string& fallback);

/// Throws ConfigError when kv holds a key outside `allowed`.
void require_keys_subset(const KeyValues& kv, const std::vector<std::string>& allowed,
                         const std::string& what);

// --- CSV outputs ---

/// Trajectory file: header "t,<value_name>", one row per sample.
void write_trajectory_csv(const std::filesystem::path& file, const std::string& value_name,
                          const std::vector<double>& t, const std::vector<double>& v);

/// Semi-wave profile: "# k=... slope0=... a=... b=... d=... mu=..." then "r,Z".
void write_profile_csv(const std::filesystem::path& file, const SemiWaveProfile& prof);

/// fb1d snapshot: "# t=<t> rho=<rho>" then "xi,w".
void write_front1d_snapshot_csv(const std::filesystem::path& file, const Front1DSnapshot& snap);

/// Front point set: "# t=<t>" then "x[,y]".
void write_front_csv(const std::filesystem::path& file, const FrontSet& front, int dim);
FrontSet read_front_csv(const std::filesystem::path& file);

// --- grid snapshot ---
// line 1: "# t=<t> dim=<d> nx=<nx> [ny=<ny>] hx=<hx> [hy=<hy>] x_lo=... y_lo=..."
// then row-major u values, one grid row per line, space-separated.
void write_snapshot(const std::filesystem::path& file, const EnthalpyField& field);
EnthalpyField read_snapshot(const std::filesystem::path& file);

} // namespace stefankpp::io

#include "stefankpp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stefankpp/errors.hpp"

namespace stefankpp::io {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw ConfigError("io: cannot open for writing: " + file.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("io: cannot open: " + file.string());
    return in;
}

} // namespace

KeyValues parse_keyvalues_text(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("io: expected key=value, got: " + t);
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ConfigError("io: empty key in: " + t);
        kv[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

KeyValues parse_keyvalues(const std::filesystem::path& file) {
    auto in = open_in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_keyvalues_text(ss.str());
}

void write_keyvalues(const std::filesystem::path& file,
                     const std::vector<std::pair<std::string, std::string>>& kv) {
    auto out = open_out(file);
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
}

double get_double(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("io: missing key: " + key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("io: key '" + key + "' is not a number: " + it->second);
    }
}

double get_double_or(const KeyValues& kv, const std::string& key, double fallback) {
    return kv.count(key) ? get_double(kv, key) : fallback;
}

long get_long_or(const KeyValues& kv, const std::string& key, long fallback) {
    return kv.count(key) ? std::lround(get_double(kv, key)) : fallback;
}

std::string get_string_or(const KeyValues& kv, const std::string& key, const std::string& fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

void require_keys_subset(const KeyValues& kv, const std::vector<std::string>& allowed,
                         const std::string& what) {
    for (const auto& [k, v] : kv) {
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("io: unknown " + what + " key: " + k);
    }
}

void write_trajectory_csv(const std::filesystem::path& file, const std::string& value_name,
                          const std::vector<double>& t, const std::vector<double>& v) {
    if (t.size() != v.size()) throw ConfigError("io: trajectory length mismatch");
    auto out = open_out(file);
    out << "t," << value_name << "\n";
    for (std::size_t i = 0; i < t.size(); ++i) out << fmt(t[i]) << "," << fmt(v[i]) << "\n";
}

void write_profile_csv(const std::filesystem::path& file, const SemiWaveProfile& prof) {
    auto out = open_out(file);
    out << "# k=" << fmt(prof.k) << " slope0=" << fmt(prof.slope0) << " a=" << fmt(prof.params.a)
        << " b=" << fmt(prof.params.b) << " d=" << fmt(prof.params.d)
        << " mu=" << fmt(prof.params.mu) << "\n";
    out << "r,Z\n";
    for (std::size_t j = 0; j < prof.z.size(); ++j)
        out << fmt(static_cast<double>(j) * prof.h) << "," << fmt(prof.z[j]) << "\n";
}

void write_front1d_snapshot_csv(const std::filesystem::path& file, const Front1DSnapshot& snap) {
    auto out = open_out(file);
    out << "# t=" << fmt(snap.t) << " rho=" << fmt(snap.rho) << "\n";
    out << "xi,w\n";
    for (std::size_t j = 0; j < snap.w.size(); ++j)
        out << fmt(static_cast<double>(j) * snap.h) << "," << fmt(snap.w[j]) << "\n";
}

void write_front_csv(const std::filesystem::path& file, const FrontSet& front, int dim) {
    auto out = open_out(file);
    out << "# t=" << fmt(front.t) << "\n";
    out << (dim == 2 ? "x,y\n" : "x\n");
    for (const auto& p : front.points) {
        out << fmt(p[0]);
        if (dim == 2) out << "," << fmt(p[1]);
        out << "\n";
    }
}

FrontSet read_front_csv(const std::filesystem::path& file) {
    auto in = open_in(file);
    FrontSet fs;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto pos = t.find("t=");
            if (pos != std::string::npos) fs.t = std::stod(t.substr(pos + 2));
            continue;
        }
        if (t == "x" || t == "x,y") continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos)
            fs.points.push_back({std::stod(t), 0.0});
        else
            fs.points.push_back({std::stod(t.substr(0, comma)), std::stod(t.substr(comma + 1))});
    }
    return fs;
}

void write_snapshot(const std::filesystem::path& file, const EnthalpyField& f) {
    auto out = open_out(file);
    out << "# t=" << fmt(f.t) << " dim=" << f.dim << " nx=" << f.nx;
    if (f.dim == 2) out << " ny=" << f.ny;
    out << " hx=" << fmt(f.hx);
    if (f.dim == 2) out << " hy=" << fmt(f.hy);
    out << " x_lo=" << fmt(f.x_lo);
    if (f.dim == 2) out << " y_lo=" << fmt(f.y_lo);
    out << "\n";
    for (long iy = 0; iy < f.ny; ++iy) {
        for (long ix = 0; ix < f.nx; ++ix) {
            if (ix) out << ' ';
            out << fmt(f.u(f.index(ix, iy)));
        }
        out << "\n";
    }
}

EnthalpyField read_snapshot(const std::filesystem::path& file) {
    auto in = open_in(file);
    std::string header;
    if (!std::getline(in, header) || header.empty() || header[0] != '#')
        throw ConfigError("io: snapshot missing header: " + file.string());

    KeyValues kv;
    std::istringstream hs(header.substr(1));
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }

    EnthalpyField f;
    f.t = get_double(kv, "t");
    f.dim = static_cast<int>(get_long_or(kv, "dim", 2));
    f.nx = get_long_or(kv, "nx", 0);
    f.ny = f.dim == 2 ? get_long_or(kv, "ny", 0) : 1;
    f.hx = get_double(kv, "hx");
    f.hy = f.dim == 2 ? get_double(kv, "hy") : 0.0;
    f.x_lo = get_double(kv, "x_lo");
    f.y_lo = f.dim == 2 ? get_double(kv, "y_lo") : 0.0;
    if (f.nx <= 0 || f.ny <= 0) throw ConfigError("io: bad snapshot sizes");

    f.e.reserve(static_cast<std::size_t>(f.nx) * f.ny);
    double v;
    while (in >> v) f.e.push_back(v); // u values; u == e on the nonnegative range
    if (f.e.size() != static_cast<std::size_t>(f.nx) * f.ny)
        throw ConfigError("io: snapshot cell count mismatch");
    return f;
}

} // namespace stefankpp::io

// scenario.hpp — Scenario configuration, presets, dispatch and CSV/sidecar output
// for the command-line tool.
//
// A configuration is a flat INI file. Every key a mode reads is recorded; keys
// nobody read are rejected. The resolved configuration (defaults filled in) is
// written next to each CSV and can be fed back with --config.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "raman/raman.hpp"

namespace raman::cli {

/// Bad configuration; `key()` names the offending "section.key".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// ---------------------------------------------------------------------------
// Number formatting (locale independent, shortest round trip)

inline std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return {buf, end};
}
inline std::string format_number(std::uint64_t v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, end};
}

// ---------------------------------------------------------------------------
// Flat settings

/// Insertion-ordered "section.key" → value map.
class Settings {
public:
    void set(const std::string& key, std::string value) {
        for (auto& [k, v] : entries_)
            if (k == key) {
                v = std::move(value);
                return;
            }
        entries_.emplace_back(key, std::move(value));
    }
    bool has(const std::string& key) const { return find(key) != nullptr; }
    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key) return &v;
        return nullptr;
    }
    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    /// Later settings win.
    void merge(const Settings& other) {
        for (const auto& [k, v] : other.entries_) set(k, v);
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Sections that are written into sidecars for information only and skipped
/// when a sidecar is read back.
inline bool informational_section(const std::string& s) { return s == "provenance" || s == "results"; }

inline Settings parse_ini(std::istream& in, const std::string& origin = "config") {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("", origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    Settings s;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError(section, "key outside of a [section]");
        if (informational_section(section)) continue;
        for (const auto& [key, value] : body) s.set(section + "." + key, value.get_value<std::string>());
    }
    return s;
}

inline Settings parse_ini_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    return parse_ini(in, path);
}

inline Settings parse_ini_string(const std::string& text) {
    std::istringstream in(text);
    return parse_ini(in);
}

/// Typed access that records which keys were consumed and writes the resolved
/// value (given or default) into `resolved`.
class Reader {
public:
    explicit Reader(const Settings& raw) : raw_(raw) {}

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const auto text = take(key, fallback ? std::optional(format_number(*fallback)) : std::nullopt);
        return parse_double(key, text);
    }
    std::uint64_t unsigned_integer(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) {
        const auto text = take(key, fallback ? std::optional(format_number(*fallback)) : std::nullopt);
        std::uint64_t v{};
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || end != text.data() + text.size())
            throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
        return v;
    }
    int integer_in(const std::string& key, int lo, int hi, std::optional<int> fallback = std::nullopt) {
        const auto v = unsigned_integer(key, fallback ? std::optional<std::uint64_t>(*fallback) : std::nullopt);
        if (v < static_cast<std::uint64_t>(lo) || v > static_cast<std::uint64_t>(hi))
            throw ConfigError(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(v);
    }
    std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        return take(key, std::move(fallback));
    }
    std::string choice(const std::string& key, const std::vector<std::string>& options,
                       std::optional<std::string> fallback = std::nullopt) {
        const auto v = take(key, std::move(fallback));
        for (const auto& o : options)
            if (o == v) return v;
        std::string all;
        for (const auto& o : options) all += (all.empty() ? "" : ", ") + o;
        throw ConfigError(key, "unknown value '" + v + "' (expected one of: " + all + ")");
    }
    std::vector<double> number_list(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        std::vector<double> out;
        for (const auto& item : split_list(take(key, std::move(fallback)))) out.push_back(parse_double(key, item));
        if (out.empty()) throw ConfigError(key, "list must not be empty");
        return out;
    }
    std::vector<std::string> word_list(const std::string& key, const std::vector<std::string>& options,
                                       std::optional<std::string> fallback = std::nullopt) {
        auto items = split_list(take(key, std::move(fallback)));
        if (items.empty()) throw ConfigError(key, "list must not be empty");
        for (const auto& it : items)
            if (std::find(options.begin(), options.end(), it) == options.end())
                throw ConfigError(key, "unknown entry '" + it + "'");
        return items;
    }
    bool has(const std::string& key) const { return raw_.has(key); }

    /// Throws for any key that no reader consumed.
    void reject_unused() const {
        for (const auto& [k, v] : raw_.entries())
            if (!used_.count(k)) throw ConfigError(k, "unknown key for this mode");
    }
    const Settings& resolved() const noexcept { return resolved_; }

private:
    std::string take(const std::string& key, std::optional<std::string> fallback) {
        used_.insert(key);
        std::string v;
        if (const auto* given = raw_.find(key))
            v = trim(*given);
        else if (fallback)
            v = *fallback;
        else
            throw ConfigError(key, "required key missing");
        resolved_.set(key, v);
        return v;
    }
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string::npos) return {};
        return s.substr(b, s.find_last_not_of(" \t") - b + 1);
    }
    static std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream in(s);
        while (std::getline(in, cur, ',')) {
            cur = trim(cur);
            if (!cur.empty()) out.push_back(cur);
        }
        return out;
    }
    static double parse_double(const std::string& key, const std::string& text) {
        double v{};
        const char* first = text.data();
        if (!text.empty() && text[0] == '+') ++first;
        auto [end, ec] = std::from_chars(first, text.data() + text.size(), v);
        if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v))
            throw ConfigError(key, "expected a finite number, got '" + text + "'");
        return v;
    }

    const Settings& raw_;
    Settings resolved_;
    std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// Output table

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunOutput {
    Table table;
    Settings resolved;
    Settings provenance;
    Settings results;
    std::vector<std::string> warnings;
};

inline void write_csv(std::ostream& os, const std::string& meta_path, const Table& t) {
    os << "# metadata: " << meta_path << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
        os << '\n';
    }
}

inline void write_meta(std::ostream& os, const RunOutput& r, const std::string& version) {
    std::string section;
    auto emit = [&](const Settings& s) {
        for (const auto& [k, v] : s.entries()) {
            const auto dot = k.find('.');
            const auto sec = k.substr(0, dot);
            if (sec != section) {
                os << (section.empty() ? "" : "\n") << '[' << sec << "]\n";
                section = sec;
            }
            os << k.substr(dot + 1) << " = " << v << '\n';
        }
    };
    emit(r.resolved);
    Settings info;
    info.set("provenance.tool", "raman_cli");
    info.set("provenance.version", version);
    info.merge(r.provenance);
    for (std::size_t i = 0; i < r.warnings.size(); ++i)
        info.set("provenance.warning" + std::to_string(i + 1), r.warnings[i]);
    info.merge(r.results);
    emit(info);
}

// ---------------------------------------------------------------------------
// Shared parameter blocks

inline const std::vector<std::string>& mode_names() {
    static const std::vector<std::string> m{"photon-spectrum", "laser-spectrum", "beats-photon", "beats-laser",
                                            "linewidth-sweep", "success-sweep",  "temporal",     "oracle-check"};
    return m;
}

struct Common {
    std::string mode;
    std::uint64_t seed;
    unsigned threads;
    QuadratureSpec quad;
};

inline Common read_common(Reader& r) {
    Common c;
    c.mode = r.choice("scenario.mode", mode_names());
    if (r.has("scenario.preset")) r.text("scenario.preset");
    c.seed = r.unsigned_integer("scenario.seed", 0);
    c.threads = static_cast<unsigned>(r.integer_in("scenario.threads", 1, 256, 1));
    const auto profile = r.choice("scenario.tolerance_profile", {"default", "strict"}, "default");
    c.quad = profile == "strict" ? strict_quadrature() : QuadratureSpec{};
    return c;
}

template <class F>
auto build(const std::string& key, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw ConfigError(key, e.what());
    }
}

inline void require_unit_width(double total, const std::string& key) {
    if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError(key, "rates are in units of the total width; they must add up to 1 (got " +
                                   format_number(total) + ")");
}

inline AtomThreeLevel read_atom(Reader& r) {
    const double g1 = r.number("atom.gamma1", 0.5);
    const double g2 = r.number("atom.gamma2", 0.5);
    auto atom = build("atom", [&] { return AtomThreeLevel(g1, g2); });
    require_unit_width(g1 + g2, "atom");
    return atom;
}

inline BeatAtom read_beat_atom(Reader& r) {
    const double g1 = r.number("atom.gamma1", 0.03);
    const double g2 = r.number("atom.gamma2", 0.03);
    const double g3 = r.number("atom.gamma3", 0.94);
    const double split = r.number("beats.splitting", 2.0);
    auto b = build("atom", [&] { return BeatAtom(g1, g2, g3, split); });
    require_unit_width(g1 + g2 + g3, "atom");
    return b;
}

inline PacketShape parse_shape(const std::string& s) {
    if (s == "rectangular") return PacketShape::Rectangular;
    if (s == "gaussian") return PacketShape::Gaussian;
    return PacketShape::Lorentzian;
}
inline const std::vector<std::string>& shape_names() {
    static const std::vector<std::string> s{"rectangular", "gaussian", "lorentzian"};
    return s;
}

/// Default delay τ = 20/Δω1, which keeps the Gaussian closed form valid.
inline IncidentWavePacket read_packet(Reader& r, PacketShape shape, std::optional<double> carrier_default = 0.0,
                                      double width_default = 1.0) {
    const double carrier = r.number("packet.carrier", carrier_default);
    const double width = r.number("packet.width", width_default);
    if (!(width > 0.0)) throw ConfigError("packet.width", "must be > 0");
    const double delay = r.number("packet.delay", 20.0 / width);
    return build("packet", [&] { return IncidentWavePacket::with_width(shape, carrier, width, delay); });
}

inline FrequencyGrid read_grid(Reader& r, const FrequencyGrid& fallback) {
    const double lo = r.number("grid.lo", fallback.front());
    const double hi = r.number("grid.hi", fallback.back());
    const auto n = r.unsigned_integer("grid.points", fallback.size());
    if (n > 2000001) throw ConfigError("grid.points", "at most 2000001 points");
    return build("grid", [&] { return FrequencyGrid::uniform(lo, hi, static_cast<std::size_t>(n)); });
}

inline std::string tag(double v) { return format_number(v); }

template <class Eval>
std::vector<std::vector<double>> rows_parallel(std::size_t n, unsigned threads, std::size_t cols, Eval&& eval) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(cols));
    parallel_for(n, threads, [&](std::size_t i) { eval(i, rows[i]); });
    return rows;
}

// ---------------------------------------------------------------------------
// Modes

inline RunOutput run_photon_spectrum(Reader& r, const Common& c) {
    const auto atom = read_atom(r);
    const auto shape_key = r.choice("packet.shape", {"rectangular", "gaussian", "lorentzian", "all"}, "lorentzian");
    std::vector<std::string> shapes = shape_key == "all" ? shape_names() : std::vector<std::string>{shape_key};
    std::vector<IncidentWavePacket> packets;
    const double carrier = r.number("packet.carrier", 0.0);
    const double width = r.number("packet.width", 1.0);
    if (!(width > 0.0)) throw ConfigError("packet.width", "must be > 0");
    const double delay = r.number("packet.delay", 20.0 / width);
    for (const auto& s : shapes)
        packets.push_back(build("packet", [&] { return IncidentWavePacket::with_width(parse_shape(s), carrier, width, delay); }));
    const auto grid = read_grid(r, default_photon_grid(packets.front(), atom.gamma_total()));
    r.reject_unused();

    RunOutput out;
    out.table.columns.push_back("detuning_gamma");
    std::vector<EmissionResult> res;
    for (std::size_t k = 0; k < packets.size(); ++k) {
        res.push_back(photon_spectrum(atom, packets[k], grid, c.quad));
        out.table.columns.push_back("S_" + shapes[k] + "_per_gamma");
        out.results.set("results.success_probability_" + shapes[k], format_number(res.back().success_probability));
        out.results.set("results.linewidth_" + shapes[k] + "_gamma", format_number(suessmann_linewidth(res.back().spectrum)));
        for (const auto& w : res.back().warnings) out.warnings.push_back(w);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& e : res) row.push_back(e.spectrum.values()[i]);
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

inline RunOutput run_laser_spectrum(Reader& r, const Common& c) {
    const auto atom = read_atom(r);
    const auto rabis = r.number_list("laser.rabi", "1");
    const auto dets = r.number_list("laser.detuning", "0");
    const int n_max = r.integer_in("laser.n_max", 0, 2, 0);
    std::vector<LaserDrive> drives;
    for (double om : rabis)
        for (double d : dets) drives.push_back(build("laser", [&] { return LaserDrive(om, d); }));
    // Grid: widest window of all drives; resolution of the finest.
    double half = 0.0;
    std::size_t pts = 0;
    for (const auto& d : drives) {
        const auto g = default_laser_grid(d, atom.gamma_total(), n_max > 0 ? 401 : 4001);
        half = std::max(half, g.back());
        pts = std::max(pts, n_max > 0 ? std::size_t{401} : g.size());
    }
    const auto grid = read_grid(r, FrequencyGrid::uniform(-half, half, pts));
    r.reject_unused();

    RunOutput out;
    out.table.columns.push_back("detuning_gamma");
    std::vector<std::vector<double>> cols;
    const auto weights = success_probabilities(atom, n_max);
    for (const auto& d : drives) {
        const std::string label = "[rabi=" + tag(d.rabi) + ";det=" + tag(d.detuning) + "]";
        std::vector<std::vector<double>> parts;
        parts.push_back(s0_spectrum(atom, d, grid, &out.warnings).values());
        for (int n = 1; n <= n_max; ++n) {
            const LaserPath path(atom, d);
            const auto b = intermediate_breakpoints({path.dressed}, 0.0);
            auto amp = [&](double d2, std::initializer_list<double> q) { return asymptotic_amplitude(path, d2, q); };
            std::vector<double> v(grid.size());
            parallel_for(grid.size(), c.threads, [&](std::size_t i) { v[i] = partial_density(n, amp, grid[i], b, c.quad); });
            parts.push_back(normalize(SpectrumDensity(grid, std::move(v))).values());
        }
        for (int n = 0; n <= n_max; ++n) {
            out.table.columns.push_back("S" + std::to_string(n) + label + "_per_gamma");
            cols.push_back(parts[static_cast<std::size_t>(n)]);
        }
        if (n_max > 0) {
            std::vector<double> sum(grid.size(), 0.0);
            for (int n = 0; n <= n_max; ++n)
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += weights[static_cast<std::size_t>(n)] * parts[static_cast<std::size_t>(n)][i];
            out.table.columns.push_back("Ssum" + label + "_per_gamma");
            cols.push_back(normalize(SpectrumDensity(grid, std::move(sum))).values());
        }
        try {
            const auto s = stark_shift(atom, d);
            out.results.set("results.stark_shift" + label, format_number(s.delta_s));
            out.results.set("results.kappa" + label, format_number(s.kappa));
        } catch (const Error&) {
            out.results.set("results.stark_shift" + label, "degenerate");
        }
    }
    for (int n = 0; n <= n_max; ++n)
        out.results.set("results.N" + std::to_string(n), format_number(weights[static_cast<std::size_t>(n)]));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& col : cols) row.push_back(col[i]);
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

inline SuperpositionInit read_init(Reader& r, double splitting, double phase_shift = 0.0) {
    const double w1 = r.number("beats.weight1", 0.5);
    const double phase = r.number("beats.phase", 0.0);
    return build("beats", [&] { return SuperpositionInit::from_phase(w1, phase + phase_shift, splitting); });
}

inline RunOutput run_beats_photon(Reader& r, const Common& c) {
    const auto batom = read_beat_atom(r);
    const auto shape = parse_shape(r.choice("packet.shape", shape_names(), "lorentzian"));
    const auto packet = read_packet(r, shape, -0.5 * batom.splitting(), 0.1);
    const auto init = read_init(r, batom.splitting());
    const auto opposite = SuperpositionInit(init.c1(), -init.c2(), batom.splitting());
    const double half = std::max(8.0, std::abs(packet.carrier()) + batom.splitting() + 8.0 * packet.width());
    const double narrow = std::min(1.0, packet.width()) / 20.0;
    const auto pts = std::max<std::size_t>(4001, static_cast<std::size_t>(std::ceil(2.0 * half / narrow)) | 1u);
    const auto grid = read_grid(r, FrequencyGrid::uniform(-half, half, pts));
    r.reject_unused();

    RunOutput out;
    const auto a = beat_spectrum_photon(batom, init, packet, grid, c.threads);
    const auto b = beat_spectrum_photon(batom, opposite, packet, grid, c.threads);
    out.table.columns = {"detuning_gamma", "S_phase_per_gamma", "S_phase_plus_pi_per_gamma"};
    for (std::size_t i = 0; i < grid.size(); ++i) out.table.rows.push_back({grid[i], a.values()[i], b.values()[i]});
    out.results.set("results.peaks_phase", std::to_string(find_peaks(a).size()));
    out.results.set("results.peaks_phase_plus_pi", std::to_string(find_peaks(b).size()));
    return out;
}

inline RunOutput run_beats_laser(Reader& r, const Common& c) {
    const auto batom = read_beat_atom(r);
    const double rabi = r.number("laser.rabi", 1.0);
    const double det = r.number("laser.detuning", -0.5 * batom.splitting());
    const auto drive = build("laser", [&] { return LaserDrive(rabi, det); });
    const auto init = read_init(r, batom.splitting());
    const int n_max = r.integer_in("beats.n_max", 0, 2, 2);
    const double half = std::abs(det) + batom.splitting() + 2.0 * rabi + 6.0;
    const auto grid = read_grid(r, FrequencyGrid::uniform(-half, half, 481));
    r.reject_unused();

    RunOutput out;
    std::vector<SpectrumDensity> parts;
    for (int n = 0; n <= n_max; ++n) parts.push_back(beat_spectrum_laser(batom, init, drive, n, grid, c.quad, c.threads));
    const auto sum = beat_sum_spectrum(batom, parts);
    out.table.columns.push_back("detuning_gamma");
    for (int n = 0; n <= n_max; ++n) out.table.columns.push_back("S" + std::to_string(n) + "_per_gamma");
    out.table.columns.push_back("Ssum_per_gamma");
    const auto w = beat_success_probabilities(batom, n_max);
    for (int n = 0; n <= n_max; ++n) out.results.set("results.N" + std::to_string(n), format_number(w[static_cast<std::size_t>(n)]));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& p : parts) row.push_back(p.values()[i]);
        row.push_back(sum.values()[i]);
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

struct Sweep {
    std::vector<double> widths;
    std::vector<std::string> shapes;
    double carrier;
    double delay_factor;
};

inline Sweep read_sweep(Reader& r) {
    Sweep s;
    const double lo = r.number("sweep.width_min", 0.03);
    const double hi = r.number("sweep.width_max", 100.0);
    const auto n = r.unsigned_integer("sweep.points", 61);
    if (!(lo > 0.0 && hi >= lo)) throw ConfigError("sweep.width_min", "need 0 < width_min <= width_max");
    if (n < 1 || n > 100000) throw ConfigError("sweep.points", "must lie in [1, 100000]");
    for (std::uint64_t k = 0; k < n; ++k)
        s.widths.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1)));
    s.shapes = r.word_list("sweep.shapes", shape_names(), "rectangular,gaussian,lorentzian");
    s.carrier = r.number("sweep.carrier", 0.0);
    s.delay_factor = r.number("sweep.delay_factor", 20.0);
    if (!(s.delay_factor > 0.0)) throw ConfigError("sweep.delay_factor", "must be > 0");
    return s;
}

inline RunOutput run_sweep(Reader& r, const Common& c, bool linewidth) {
    const auto atom = read_atom(r);
    const auto sw = read_sweep(r);
    r.reject_unused();
    RunOutput out;
    out.table.columns.push_back("width_gamma");
    for (const auto& s : sw.shapes) out.table.columns.push_back((linewidth ? "linewidth_" : "success_") + s + (linewidth ? "_gamma" : ""));
    out.table.rows = rows_parallel(sw.widths.size(), c.threads, sw.shapes.size() + 1, [&](std::size_t i, std::vector<double>& row) {
        const double w = sw.widths[i];
        row[0] = w;
        for (std::size_t k = 0; k < sw.shapes.size(); ++k) {
            const auto p = IncidentWavePacket::with_width(parse_shape(sw.shapes[k]), sw.carrier, w, sw.delay_factor / w);
            if (linewidth) {
                row[k + 1] = suessmann_linewidth(photon_spectrum(atom, p, default_photon_grid(p, atom.gamma_total()), c.quad).spectrum);
            } else {
                row[k + 1] = p.shape() == PacketShape::Lorentzian ? success_probability_lorentz(atom, sw.carrier, w)
                                                                  : success_probability_numeric(atom, p, c.quad);
            }
        }
    });
    return out;
}

inline RunOutput run_temporal(Reader& r, const Common& c) {
    const auto atom = read_atom(r);
    r.choice("temporal.first", {"exponential"}, "exponential");
    const double rate = r.number("temporal.rate", 1.0);
    const double step = r.number("temporal.step", 0.01);
    const double cutoff = r.number("temporal.cutoff", 40.0);
    const int n_max = r.integer_in("temporal.n_max", 1, 64, 8);
    const auto samples = r.unsigned_integer("temporal.samples", 1000000);
    if (!(rate > 0.0)) throw ConfigError("temporal.rate", "must be > 0");
    if (!(step > 0.0 && cutoff > 10.0 * step)) throw ConfigError("temporal.step", "need step > 0 and cutoff > 10 steps");
    if (samples < 2) throw ConfigError("temporal.samples", "need at least 2 samples");
    r.reject_unused();

    RunOutput out;
    const auto first = TimeDistribution::exponential(rate, step, cutoff);
    const auto weights = success_probabilities(atom, n_max - 1);
    out.table.columns = {"first_photons", "weight", "mean_inv_gamma", "spread_inv_gamma"};
    auto p = first;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) p = convolve(p, first);
        const auto m = moments(p);
        out.table.rows.push_back({static_cast<double>(n), weights[static_cast<std::size_t>(n - 1)], m.mean, m.spread});
    }
    const auto m1 = moments(first);
    const auto law = raman_arrival_stats(atom, m1);
    const auto comp = compound_arrival_stats(atom, m1);
    const auto mc = compound_monte_carlo_exponential(atom, rate, samples, c.seed, c.threads);
    out.results.set("results.first_mean", format_number(m1.mean));
    out.results.set("results.first_spread", format_number(m1.spread));
    out.results.set("results.raman_mean", format_number(law.mean));
    out.results.set("results.raman_spread", format_number(law.spread));
    out.results.set("results.compound_mean", format_number(comp.mean));
    out.results.set("results.compound_spread", format_number(comp.spread));
    out.results.set("results.monte_carlo_mean", format_number(mc.mean));
    out.results.set("results.monte_carlo_spread", format_number(mc.spread));
    return out;
}

inline RunOutput run_oracle_check(Reader& r, const Common&) {
    const auto atom = read_atom(r);
    const auto kind = r.choice("oracle.case", {"photon", "laser"}, "photon");
    const double w = r.number("oracle.half_width", 40.0);
    const double dw = r.number("oracle.spacing", 0.02);
    const auto modes = build("oracle", [&] { return ModeGrid(w, dw); });
    RunOutput out;
    OracleResult res = [&] {
        if (kind == "photon") {
            const auto shape = parse_shape(r.choice("packet.shape", shape_names(), "lorentzian"));
            const auto packet = read_packet(r, shape, 0.0, 1.0);
            const double t_end = r.number("oracle.t_end", 50.0 / atom.gamma_total() + packet.delay() + 4.0);
            r.reject_unused();
            auto o = oracle_photon_scattering(atom, packet, modes, t_end);
            const auto cf = photon_spectrum(atom, packet, modes.frequency_grid());
            out.results.set("results.closed_form_success", format_number(cf.success_probability));
            out.results.set("results.l1_distance", format_number(l1_distance(o.spectrum, cf.spectrum)));
            out.table.columns = {"detuning_gamma", "S_oracle_per_gamma", "S_closed_form_per_gamma"};
            for (std::size_t k = 0; k < modes.size(); ++k)
                out.table.rows.push_back({modes.detuning(k), o.spectrum.values()[k], cf.spectrum.values()[k]});
            return o;
        }
        const double rabi = r.number("laser.rabi", 1.0);
        const double det = r.number("laser.detuning", 0.0);
        const auto drive = build("laser", [&] { return LaserDrive(rabi, det); });
        const double t_end = r.number("oracle.t_end", 60.0 / atom.gamma_total());
        r.reject_unused();
        auto o = oracle_laser_n0(atom, drive, modes, t_end);
        const auto s0 = s0_spectrum(atom, drive, modes.frequency_grid(), &out.warnings);
        out.results.set("results.closed_form_success", format_number(success_probabilities(atom, 0)[0]));
        out.results.set("results.l1_distance", format_number(l1_distance(o.spectrum, s0)));
        out.table.columns = {"detuning_gamma", "S_oracle_per_gamma", "S_closed_form_per_gamma"};
        for (std::size_t k = 0; k < modes.size(); ++k)
            out.table.rows.push_back({modes.detuning(k), o.spectrum.values()[k], s0.values()[k]});
        return o;
    }();
    out.results.set("results.oracle_success", format_number(res.success_probability));
    out.results.set("results.input_mass", format_number(res.input_mass));
    out.results.set("results.norm_drift", format_number(res.norm_drift));
    return out;
}

/// Resolves `raw`, runs the computation and returns the table plus the
/// resolved configuration. Throws ConfigError or raman::Error.
inline RunOutput run(const Settings& raw) {
    Reader r(raw);
    const auto c = read_common(r);
    RunOutput out;
    if (c.mode == "photon-spectrum") out = run_photon_spectrum(r, c);
    else if (c.mode == "laser-spectrum") out = run_laser_spectrum(r, c);
    else if (c.mode == "beats-photon") out = run_beats_photon(r, c);
    else if (c.mode == "beats-laser") out = run_beats_laser(r, c);
    else if (c.mode == "linewidth-sweep") out = run_sweep(r, c, true);
    else if (c.mode == "success-sweep") out = run_sweep(r, c, false);
    else if (c.mode == "temporal") out = run_temporal(r, c);
    else out = run_oracle_check(r, c);
    out.resolved = r.resolved();
    out.provenance.set("provenance.abs_tol", format_number(c.quad.abs_tol));
    out.provenance.set("provenance.rel_tol", format_number(c.quad.rel_tol));
    out.provenance.set("provenance.max_subdivisions", std::to_string(c.quad.max_subdivisions));
    return out;
}

// ---------------------------------------------------------------------------
// Presets

struct Preset {
    std::string name;
    std::string summary;
    std::string ini;
};

inline std::vector<Preset> presets() {
    std::vector<Preset> p;
    // Single-photon spectra: widths 0.1, 0.3, 1 per row; resonant / Δ1 = 3.
    const char* rows[] = {"0.1", "0.3", "1"};
    for (int k = 0; k < 6; ++k) {
        const std::string w = rows[k / 2];
        const std::string d1 = k % 2 ? "3" : "0";
        p.push_back({std::string("fig2") + char('a' + k),
                     "photon spectra, all shapes, width " + w + ", carrier " + d1,
                     "[scenario]\nmode = photon-spectrum\n[packet]\nshape = all\nwidth = " + w + "\ncarrier = " + d1 + "\n"});
    }
    p.push_back({"fig3a", "effective linewidth vs width 0.03..100, resonant, all shapes",
                 "[scenario]\nmode = linewidth-sweep\n[sweep]\nwidth_min = 0.03\nwidth_max = 100\npoints = 61\n"});
    p.push_back({"fig3b", "success probability vs width 0.03..100, resonant, all shapes",
                 "[scenario]\nmode = success-sweep\n[sweep]\nwidth_min = 0.03\nwidth_max = 100\npoints = 61\n"});
    p.push_back({"fig4", "laser S0 for rabi 0.25,1,4 and detuning 0,2",
                 "[scenario]\nmode = laser-spectrum\n[laser]\nrabi = 0.25,1,4\ndetuning = 0,2\n"});
    // Photon beats: rows width 2, 0.5, 0.1; splitting 1 (a, c, e) or 2 (b, d, f).
    const char* beat_rows[] = {"2", "0.5", "0.1"};
    for (const char* fig : {"fig5", "fig6"}) {
        for (int k = 0; k < 6; ++k) {
            const std::string w = beat_rows[k / 2];
            const std::string split = k % 2 ? "2" : "1";
            const std::string carrier = k % 2 ? "-1" : "-0.5";
            p.push_back({std::string(fig) + char('a' + k),
                         "photon beats, lorentzian width " + w + ", splitting " + split + ", c1 = +-c2",
                         "[scenario]\nmode = beats-photon\n[beats]\nsplitting = " + split + "\n[packet]\nwidth = " + w +
                             "\ncarrier = " + carrier + "\n"});
        }
    }
    // Laser beats, rabi 1: splitting 1 (a, c) / 2 (b, d); c1 = c2 (a, b), c1 = -c2 (c, d).
    for (int k = 0; k < 4; ++k) {
        const std::string split = k % 2 ? "2" : "1";
        const std::string carrier = k % 2 ? "-1" : "-0.5";
        const std::string phase = k < 2 ? "0" : "3.141592653589793";
        p.push_back({std::string("fig7") + char('a' + k),
                     "laser beats N=0,1,2 and sum, rabi 1, splitting " + split + (k < 2 ? ", c1 = c2" : ", c1 = -c2"),
                     "[scenario]\nmode = beats-laser\n[laser]\nrabi = 1\ndetuning = " + carrier + "\n[beats]\nsplitting = " +
                         split + "\nphase = " + phase + "\n"});
    }
    return p;
}

inline Settings preset_settings(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) {
            auto s = parse_ini_string(p.ini);
            s.set("scenario.preset", name);
            return s;
        }
    throw ConfigError("--preset", "unknown preset '" + name + "' (see --list-presets)");
}

} // namespace raman::cli

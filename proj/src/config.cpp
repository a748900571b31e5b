#include "supou/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "supou/errors.hpp"

namespace supou {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

struct KvEntry {
    std::string value;
    bool used = false;
};

class KvReader {
  public:
    explicit KvReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + stripped + "'");
            }
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = unquote(trim(stripped.substr(eq + 1)));
            if (key.empty()) {
                throw ConfigError("line " + std::to_string(line_no) + ": empty key");
            }
            if (!entries_.emplace(key, KvEntry{value}).second) {
                throw ConfigError(key + ": duplicate key");
            }
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigError(key + ": required key is missing");
        return *v;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.used) throw ConfigError(key + ": unknown key");
        }
    }

  private:
    std::map<std::string, KvEntry> entries_;
};

double to_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return parsed;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
    }
    return parsed;
}

int to_int(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long parsed = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
    return static_cast<int>(parsed);
}

std::vector<double> to_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        out.push_back(to_double(key, trim(item)));
    }
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list of numbers");
    return out;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

LevyMeasureSpec parse_levy(KvReader& reader, const std::string& kind) {
    if (kind == "pareto") {
        return LevyMeasureSpec::pareto(to_double("levy.gamma", reader.require("levy.gamma")));
    }
    if (kind == "exponential") {
        return LevyMeasureSpec::exponential(to_double("levy.c", reader.require("levy.c")));
    }
    if (kind == "dirac") {
        return LevyMeasureSpec::dirac(to_double("levy.z0", reader.require("levy.z0")));
    }
    if (kind == "bounded_infinite") return LevyMeasureSpec::bounded_infinite();
    if (kind == "slowly_varying") return LevyMeasureSpec::slowly_varying();
    throw ConfigError("levy.kind: unknown kind '" + kind +
                      "' (expected pareto | exponential | dirac | bounded_infinite | "
                      "slowly_varying)");
}

MixingMeasureSpec parse_pi(KvReader& reader, const std::string& kind) {
    if (kind == "gamma") {
        return MixingMeasureSpec::gamma_shape(to_double("pi.alpha", reader.require("pi.alpha")));
    }
    if (kind == "uniform") {
        const double a = to_double("pi.a", reader.require("pi.a"));
        const double b = to_double("pi.b", reader.require("pi.b"));
        return MixingMeasureSpec::uniform(a, b);
    }
    if (kind == "point_mass") {
        return MixingMeasureSpec::point_mass(to_double("pi.x0", reader.require("pi.x0")));
    }
    if (kind == "inverse_first_moment") {
        return MixingMeasureSpec::inverse_first_moment(to_double("pi.M", reader.require("pi.M")));
    }
    throw ConfigError("pi.kind: unknown kind '" + kind +
                      "' (expected gamma | uniform | point_mass | inverse_first_moment)");
}

NormalizerSpec parse_normalizer(KvReader& reader, const std::string& family) {
    const double param = to_double("normalizer.param", reader.require("normalizer.param"));
    NormalizerSpec f;
    if (family == "power") {
        f = NormalizerSpec::power(param);
    } else if (family == "log") {
        f = NormalizerSpec::log_t(param);
    } else if (family == "log_over_loglog") {
        f = NormalizerSpec::log_over_loglog(param);
    } else {
        throw ConfigError("normalizer.family: unknown family '" + family +
                          "' (expected power | log | log_over_loglog)");
    }
    if (auto t0 = reader.take("normalizer.t0")) {
        const double parsed = to_double("normalizer.t0", *t0);
        if (!(parsed >= f.t0)) {
            throw ConfigError("normalizer.t0: must be >= the family default " +
                              format_double(f.t0));
        }
        f.t0 = parsed;
    }
    return f;
}

}  // namespace

const char* levy_kind_name(LevyKind kind) {
    switch (kind) {
        case LevyKind::Pareto: return "pareto";
        case LevyKind::Exponential: return "exponential";
        case LevyKind::Dirac: return "dirac";
        case LevyKind::BoundedInfinite: return "bounded_infinite";
        case LevyKind::SlowlyVarying: return "slowly_varying";
    }
    return "unknown";
}

const char* mixing_kind_name(MixingKind kind) {
    switch (kind) {
        case MixingKind::Gamma: return "gamma";
        case MixingKind::Uniform: return "uniform";
        case MixingKind::PointMass: return "point_mass";
        case MixingKind::InverseFirstMoment: return "inverse_first_moment";
    }
    return "unknown";
}

const char* normalizer_family_name(NormalizerFamily family) {
    switch (family) {
        case NormalizerFamily::Power: return "power";
        case NormalizerFamily::Log: return "log";
        case NormalizerFamily::LogOverLogLog: return "log_over_loglog";
    }
    return "unknown";
}

RunConfig parse_config_text(const std::string& text) {
    KvReader reader(text);
    RunConfig config;

    if (auto command = reader.take("command")) config.command = *command;
    if (auto kind = reader.take("levy.kind")) config.levy = parse_levy(reader, *kind);
    if (auto kind = reader.take("pi.kind")) config.pi = parse_pi(reader, *kind);

    if (auto eps = reader.take("eps")) {
        if (*eps != "auto") {
            const double parsed = to_double("eps", *eps);
            if (!(parsed >= 0.0)) throw ConfigError("eps: must be >= 0");
            config.eps = parsed;
        }
    }
    if (auto tol = reader.take("prune_tol")) {
        const double parsed = to_double("prune_tol", *tol);
        if (!(parsed >= 0.0)) throw ConfigError("prune_tol: must be >= 0");
        config.prune_tol = parsed;
    }
    if (auto horizon = reader.take("window.T")) {
        const double parsed = to_double("window.T", *horizon);
        if (!(parsed > 0.0)) throw ConfigError("window.T: must be > 0");
        config.horizon = parsed;
    }
    if (auto burn = reader.take("window.B")) {
        if (*burn != "auto") {
            const double parsed = to_double("window.B", *burn);
            if (!(parsed >= 0.0)) throw ConfigError("window.B: must be >= 0");
            config.burn_in = parsed;
        }
    }
    if (auto seed = reader.take("seed")) config.seed = to_u64("seed", *seed);
    if (auto replicates = reader.take("replicates")) {
        config.replicates = to_int("replicates", *replicates);
        if (config.replicates < 1) throw ConfigError("replicates: must be >= 1");
    }
    if (auto threads = reader.take("threads")) {
        if (*threads == "auto") {
            config.threads = 0;
        } else {
            config.threads = to_int("threads", *threads);
            if (config.threads < 1) throw ConfigError("threads: must be >= 1 or auto");
        }
    }
    if (auto out = reader.take("output_dir")) {
        if (out->empty()) throw ConfigError("output_dir: must not be empty");
        config.output_dir = *out;
    }
    if (auto family = reader.take("normalizer.family")) {
        config.normalizer = parse_normalizer(reader, *family);
    }
    if (auto rmin = reader.take("grid.rmin")) {
        config.grid_rmin = to_double("grid.rmin", *rmin);
        if (!(config.grid_rmin > 0.0)) throw ConfigError("grid.rmin: must be > 0");
    }
    if (auto rmax = reader.take("grid.rmax")) {
        config.grid_rmax = to_double("grid.rmax", *rmax);
    }
    if (!(config.grid_rmax > config.grid_rmin)) {
        throw ConfigError("grid.rmax: must be > grid.rmin");
    }
    if (auto points = reader.take("grid.points")) {
        config.grid_points = to_int("grid.points", *points);
        if (config.grid_points < 2) throw ConfigError("grid.points: must be >= 2");
    }
    if (auto k = reader.take("integral.K")) {
        config.integral_k = to_double("integral.K", *k);
        if (!(config.integral_k > 0.0)) throw ConfigError("integral.K: must be > 0");
    }
    if (auto side = reader.take("integral.side")) {
        if (*side == "lower") {
            config.integral_side = IntegralSide::Lower;
        } else if (*side == "upper") {
            config.integral_side = IntegralSide::Upper;
        } else {
            throw ConfigError("integral.side: expected lower | upper, got '" + *side + "'");
        }
    }
    if (auto tmax = reader.take("integral.tmax")) {
        config.integral_tmax = to_double("integral.tmax", *tmax);
        if (!(config.integral_tmax > 100.0)) throw ConfigError("integral.tmax: must be > 100");
    }
    if (auto grid = reader.take("largexi.m_grid")) {
        config.largexi_m_grid = to_double_list("largexi.m_grid", *grid);
        for (double m : config.largexi_m_grid) {
            if (!(m > 1.0)) throw ConfigError("largexi.m_grid: truncations must be > 1");
        }
    }
    if (auto betas = reader.take("moments.betas")) {
        config.moment_betas = to_double_list("moments.betas", *betas);
        for (double beta : config.moment_betas) {
            if (!(beta > 0.0)) throw ConfigError("moments.betas: exponents must be > 0");
        }
    }
    if (auto points = reader.take("path.points")) {
        config.path_points = to_int("path.points", *points);
        if (config.path_points < 2) throw ConfigError("path.points: must be >= 2");
    }

    reader.reject_unused();
    return config;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string emit_config(const RunConfig& config) {
    const RunConfig defaults;
    std::ostringstream out;
    if (!config.command.empty()) out << "command = " << config.command << "\n";
    if (config.levy) {
        out << "levy.kind = " << levy_kind_name(config.levy->kind) << "\n";
        switch (config.levy->kind) {
            case LevyKind::Pareto:
                out << "levy.gamma = " << format_double(config.levy->param) << "\n";
                break;
            case LevyKind::Exponential:
                out << "levy.c = " << format_double(config.levy->param) << "\n";
                break;
            case LevyKind::Dirac:
                out << "levy.z0 = " << format_double(config.levy->param) << "\n";
                break;
            default:
                break;
        }
    }
    if (config.pi) {
        out << "pi.kind = " << mixing_kind_name(config.pi->kind) << "\n";
        switch (config.pi->kind) {
            case MixingKind::Gamma:
                out << "pi.alpha = " << format_double(config.pi->a) << "\n";
                break;
            case MixingKind::Uniform:
                out << "pi.a = " << format_double(config.pi->a) << "\n";
                out << "pi.b = " << format_double(config.pi->b) << "\n";
                break;
            case MixingKind::PointMass:
                out << "pi.x0 = " << format_double(config.pi->a) << "\n";
                break;
            case MixingKind::InverseFirstMoment:
                out << "pi.M = " << format_double(config.pi->a) << "\n";
                break;
        }
    }
    out << "eps = " << (config.eps ? format_double(*config.eps) : "auto") << "\n";
    out << "prune_tol = " << format_double(config.prune_tol) << "\n";
    if (config.horizon) out << "window.T = " << format_double(*config.horizon) << "\n";
    out << "window.B = " << (config.burn_in ? format_double(*config.burn_in) : "auto") << "\n";
    out << "seed = " << config.seed << "\n";
    out << "replicates = " << config.replicates << "\n";
    out << "threads = "
        << (config.threads == 0 ? std::string("auto") : std::to_string(config.threads)) << "\n";
    out << "output_dir = " << config.output_dir << "\n";
    if (config.normalizer) {
        out << "normalizer.family = " << normalizer_family_name(config.normalizer->family)
            << "\n";
        out << "normalizer.param = " << format_double(config.normalizer->param) << "\n";
        out << "normalizer.t0 = " << format_double(config.normalizer->t0) << "\n";
    }
    if (config.grid_rmin != defaults.grid_rmin || config.grid_rmax != defaults.grid_rmax ||
        config.grid_points != defaults.grid_points) {
        out << "grid.rmin = " << format_double(config.grid_rmin) << "\n";
        out << "grid.rmax = " << format_double(config.grid_rmax) << "\n";
        out << "grid.points = " << config.grid_points << "\n";
    }
    if (config.integral_k != defaults.integral_k ||
        config.integral_side != defaults.integral_side ||
        config.integral_tmax != defaults.integral_tmax) {
        out << "integral.K = " << format_double(config.integral_k) << "\n";
        out << "integral.side = "
            << (config.integral_side == IntegralSide::Lower ? "lower" : "upper") << "\n";
        out << "integral.tmax = " << format_double(config.integral_tmax) << "\n";
    }
    if (!config.largexi_m_grid.empty()) {
        out << "largexi.m_grid = ";
        for (std::size_t i = 0; i < config.largexi_m_grid.size(); ++i) {
            if (i > 0) out << ",";
            out << format_double(config.largexi_m_grid[i]);
        }
        out << "\n";
    }
    if (!config.moment_betas.empty()) {
        out << "moments.betas = ";
        for (std::size_t i = 0; i < config.moment_betas.size(); ++i) {
            if (i > 0) out << ",";
            out << format_double(config.moment_betas[i]);
        }
        out << "\n";
    }
    if (config.path_points != defaults.path_points) {
        out << "path.points = " << config.path_points << "\n";
    }
    return out.str();
}

void validate_existence(const RunConfig& config) {
    if (!config.levy) throw ConfigError("levy.kind: required key is missing");
    if (!config.pi) throw ConfigError("pi.kind: required key is missing");
    const Moment lm = log_moment(*config.levy);
    if (!lm.finite) {
        throw ConfigError("existence condition (i) violated: the jump measure " +
                          config.levy->description + " has an infinite log-moment above 1");
    }
    const Moment inv = pi_moment(*config.pi, -1);
    if (!inv.finite) {
        throw ConfigError("existence condition (ii) violated: m_-1(pi) = inf for " +
                          config.pi->description);
    }
}

double resolve_eps(const RunConfig& config) {
    if (config.eps) return *config.eps;
    if (!config.levy) throw ConfigError("levy.kind: required key is missing");
    return config.levy->kind == LevyKind::BoundedInfinite ? 1e-4 : 0.0;
}

}  // namespace supou

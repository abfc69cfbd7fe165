#include "nightenh/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "nightenh/error.hpp"

namespace nightenh {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("bad number for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return v;
}

int parse_int(std::string_view key, std::string_view text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "1" || text == "true" || text == "on") return true;
    if (text == "0" || text == "false" || text == "off") return false;
    throw ConfigError("bad boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

using Setter = std::function<void(EnhanceConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"tone.gamma_slope", [](auto& c, auto k, auto v) { c.tone.slope_coeff = parse_double(k, v); }},
        {"tone.offset", [](auto& c, auto k, auto v) { c.tone.offset = parse_double(k, v); }},
        {"tone.log_floor", [](auto& c, auto k, auto v) { c.tone.log_floor = parse_double(k, v); }},
        {"rbaf.sigma0", [](auto& c, auto k, auto v) { c.rbaf.sigma0 = parse_double(k, v); }},
        {"rbaf.sigma1", [](auto& c, auto k, auto v) { c.rbaf.sigma1 = parse_double(k, v); }},
        {"rbaf.edge_threshold", [](auto& c, auto k, auto v) { c.rbaf.edge_threshold = parse_double(k, v); }},
        {"rbaf.r_max",
         [](auto& c, auto k, auto v) {
             const int r = parse_int(k, v);
             c.rbaf.r_max = r > 0 ? std::optional<int>(r) : std::nullopt;
         }},
        {"rbaf.sigmoid_gain", [](auto& c, auto k, auto v) { c.rbaf.sigmoid_gain = parse_double(k, v); }},
        {"rbaf.log_floor", [](auto& c, auto k, auto v) { c.rbaf.log_floor = parse_double(k, v); }},
        {"hist.lambda", [](auto& c, auto k, auto v) { c.smooth.lambda = parse_double(k, v); }},
        {"hist.gamma", [](auto& c, auto k, auto v) { c.smooth.gamma = parse_double(k, v); }},
        {"hist.enabled", [](auto& c, auto k, auto v) { c.histogram_smoothing = parse_bool(k, v); }},
        {"color.alpha", [](auto& c, auto k, auto v) { c.chroma_alpha = parse_double(k, v); }},
        {"bilateral.window", [](auto& c, auto k, auto v) { c.bilateral.window = parse_int(k, v); }},
        {"bilateral.sigma_d", [](auto& c, auto k, auto v) { c.bilateral.sigma_spatial = parse_double(k, v); }},
        {"bilateral.sigma_r", [](auto& c, auto k, auto v) { c.bilateral.sigma_range = parse_double(k, v); }},
        {"bilateral.enabled", [](auto& c, auto k, auto v) { c.denoise = parse_bool(k, v); }},
        {"pipeline.order",
         [](auto& c, auto, auto v) {
             try {
                 c.order = parse_order(v);
             } catch (const ArgumentError& e) {
                 throw ConfigError(e.what());
             }
         }},
    };
    return table;
}

}  // namespace

StageOrder parse_order(std::string_view s) {
    if (s == "ce-first") return StageOrder::ce_then_denoise;
    if (s == "denoise-first") return StageOrder::denoise_then_ce;
    throw ArgumentError("unknown order '" + std::string(s) + "' (ce-first|denoise-first)");
}

std::string_view order_name(StageOrder order) {
    return order == StageOrder::ce_then_denoise ? "ce-first" : "denoise-first";
}

void apply_config_entry(EnhanceConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
    it->second(cfg, key, value);
}

void apply_config_assignment(EnhanceConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    }
    apply_config_entry(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void load_config_file(EnhanceConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        try {
            apply_config_assignment(cfg, body);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::string to_config_text(const EnhanceConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "tone.gamma_slope=" << cfg.tone.slope_coeff << '\n'
        << "tone.offset=" << cfg.tone.offset << '\n'
        << "tone.log_floor=" << cfg.tone.log_floor << '\n'
        << "rbaf.sigma0=" << cfg.rbaf.sigma0 << '\n'
        << "rbaf.sigma1=" << cfg.rbaf.sigma1 << '\n'
        << "rbaf.edge_threshold=" << cfg.rbaf.edge_threshold << '\n'
        << "rbaf.r_max=" << cfg.rbaf.r_max.value_or(0) << '\n'
        << "rbaf.sigmoid_gain=" << cfg.rbaf.sigmoid_gain << '\n'
        << "rbaf.log_floor=" << cfg.rbaf.log_floor << '\n'
        << "hist.lambda=" << cfg.smooth.lambda << '\n'
        << "hist.gamma=" << cfg.smooth.gamma << '\n'
        << "hist.enabled=" << (cfg.histogram_smoothing ? "true" : "false") << '\n'
        << "color.alpha=" << cfg.chroma_alpha << '\n'
        << "bilateral.window=" << cfg.bilateral.window << '\n'
        << "bilateral.sigma_d=" << cfg.bilateral.sigma_spatial << '\n'
        << "bilateral.sigma_r=" << cfg.bilateral.sigma_range << '\n'
        << "bilateral.enabled=" << (cfg.denoise ? "true" : "false") << '\n'
        << "pipeline.order=" << order_name(cfg.order) << '\n';
    return out.str();
}

}  // namespace nightenh

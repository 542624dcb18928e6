#include "coldplasma/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

// Value text could not be converted; `offset` is relative to the value start.
struct ConversionError {
  std::string message;
  std::size_t offset = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, std::size_t offset = 0) {
  const std::string t = trim(raw);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw ConversionError{fmt::format("expected a number, got '{}'", t), offset};
  }
  return v;
}

int to_int(const std::string& raw) {
  const std::string t = trim(raw);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || v < INT32_MIN || v > INT32_MAX) {
    throw ConversionError{fmt::format("expected an integer, got '{}'", t), 0};
  }
  return static_cast<int>(v);
}

bool to_bool(const std::string& raw) {
  const std::string t = trim(raw);
  if (t == "true") return true;
  if (t == "false") return false;
  throw ConversionError{fmt::format("expected true or false, got '{}'", t), 0};
}

std::string to_string_value(const std::string& raw) {
  const std::string t = trim(raw);
  if (!t.empty() && t.front() == '"') {
    if (t.size() < 2 || t.back() != '"') throw ConversionError{"unterminated string", 0};
    return t.substr(1, t.size() - 2);
  }
  return t;
}

std::vector<double> to_list(const std::string& raw) {
  std::string t = trim(raw);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw ConversionError{"unterminated list", 0};
    t = t.substr(1, t.size() - 2);
  }
  std::vector<double> out;
  if (trim(t).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = t.find(',', start);
    out.push_back(to_double(t.substr(start, comma - start), start + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class E>
E to_enum(const std::string& raw, const std::vector<std::pair<std::string, E>>& names) {
  const std::string t = to_string_value(raw);
  for (const auto& [name, value] : names) {
    if (name == t) return value;
  }
  std::string options;
  for (const auto& n : names) options += (options.empty() ? "" : ", ") + n.first;
  throw ConversionError{fmt::format("expected one of {}, got '{}'", options, t), 0};
}

using Setter = std::function<void(Settings&, const std::string&)>;

GaussianProfile& gaussian(Settings& s) {
  if (!std::holds_alternative<GaussianProfile>(s.run.initial_data)) {
    s.run.initial_data = GaussianProfile{};
  }
  return std::get<GaussianProfile>(s.run.initial_data);
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"profile",
       [](Settings& s, const std::string& v) {
         const std::string kind = to_enum<std::string>(v, {{"gaussian", "gaussian"}, {"tabulated", "tabulated"}});
         if (kind == "gaussian") {
           gaussian(s);
         } else if (!std::holds_alternative<TabulatedProfile>(s.run.initial_data)) {
           s.run.initial_data = TabulatedProfile{};
         }
       }},
      {"a_star", [](Settings& s, const std::string& v) { gaussian(s).a_star = to_double(v); }},
      {"rho_star", [](Settings& s, const std::string& v) { gaussian(s).rho_star = to_double(v); }},
      {"peak_field",
       [](Settings& s, const std::string& v) {
         auto& g = gaussian(s);
         g.a_star = gaussian_amplitude_for_peak(to_double(v), g.rho_star);
       }},
      {"table",
       [](Settings& s, const std::string& v) {
         s.table_path = to_string_value(v);
         s.run.initial_data = read_table(s.table_path);
       }},
      {"M", [](Settings& s, const std::string& v) { s.run.M = to_int(v); }},
      {"d", [](Settings& s, const std::string& v) { s.run.d = to_double(v); }},
      {"nu", [](Settings& s, const std::string& v) { s.run.nu = to_double(v); }},
      {"nu_theta_wb",
       [](Settings& s, const std::string& v) { s.run.nu = to_double(v) / kReferenceBreakingTime; }},
      {"scheme",
       [](Settings& s, const std::string& v) {
         s.run.scheme.kind = to_enum<SchemeKind>(v, {{"rk4", SchemeKind::rk4}, {"euler", SchemeKind::euler}});
       }},
      {"tau", [](Settings& s, const std::string& v) { s.run.scheme.tau = to_double(v); }},
      {"theta_max", [](Settings& s, const std::string& v) { s.run.theta_max = to_double(v); }},
      {"q_max", [](Settings& s, const std::string& v) { s.run.monitors.q_max = to_double(v); }},
      {"d_min", [](Settings& s, const std::string& v) { s.run.monitors.d_min = to_double(v); }},
      {"diagnostics_every",
       [](Settings& s, const std::string& v) { s.run.diagnostics_every = to_int(v); }},
      {"output_dir",
       [](Settings& s, const std::string& v) { s.run.output.directory = to_string_value(v); }},
      {"prefix", [](Settings& s, const std::string& v) { s.run.output.prefix = to_string_value(v); }},
      {"write_series",
       [](Settings& s, const std::string& v) { s.run.output.write_series = to_bool(v); }},
      {"snapshot_theta",
       [](Settings& s, const std::string& v) {
         s.run.output.snapshots.clear();
         for (double t : to_list(v)) s.run.output.snapshots.push_back({t, -s.run.d, s.run.d, 801});
       }},
      {"snapshot_rho_min",
       [](Settings& s, const std::string& v) {
         for (auto& r : s.run.output.snapshots) r.rho_min = to_double(v);
       }},
      {"snapshot_rho_max",
       [](Settings& s, const std::string& v) {
         for (auto& r : s.run.output.snapshots) r.rho_max = to_double(v);
       }},
      {"snapshot_points",
       [](Settings& s, const std::string& v) {
         for (auto& r : s.run.output.snapshots) r.points = to_int(v);
       }},
      {"threshold_nu_lo", [](Settings& s, const std::string& v) { s.threshold.nu_lo = to_double(v); }},
      {"threshold_nu_hi", [](Settings& s, const std::string& v) { s.threshold.nu_hi = to_double(v); }},
      {"threshold_tol", [](Settings& s, const std::string& v) { s.threshold.tol = to_double(v); }},
      {"samples", [](Settings& s, const std::string& v) { s.analysis.samples = to_int(v); }},
      {"tminus_mode",
       [](Settings& s, const std::string& v) {
         s.analysis.verdict.tminus = to_enum<TMinusMode>(
             v, {{"literal", TMinusMode::literal}, {"reciprocal_root", TMinusMode::reciprocal_root}});
       }},
      {"blowup_condition",
       [](Settings& s, const std::string& v) {
         s.analysis.verdict.blowup = to_enum<BlowupCondition>(
             v, {{"quadratic", BlowupCondition::quadratic}, {"rigorous", BlowupCondition::rigorous}});
       }},
      {"limiter_method",
       [](Settings& s, const std::string& v) {
         s.analysis.limiter.method = to_enum<LimiterMethod>(
             v, {{"numeric", LimiterMethod::numeric}, {"closed_form", LimiterMethod::closed_form}});
       }},
      {"limiter_ds", [](Settings& s, const std::string& v) { s.analysis.limiter.ds = to_double(v); }},
      {"max_revolutions",
       [](Settings& s, const std::string& v) { s.analysis.limiter.max_revolutions = to_int(v); }},
  };
  return table;
}

// Keys whose effect depends on others are applied after them.
int apply_rank(const std::string& key) {
  if (key == "preset") return 0;
  if (key == "table" || key == "profile") return 1;
  if (key == "peak_field") return 3;
  if (key == "snapshot_theta") return 4;
  if (key.rfind("snapshot_", 0) == 0) return 5;
  return 2;
}

void validate_settings(const Settings& s) {
  s.run.validate();
  if (!(s.threshold.tol > 0.0)) throw ValidationError("threshold_tol must be positive", "threshold_tol");
  if (!(s.threshold.nu_lo >= 0.0) || !(s.threshold.nu_hi > s.threshold.nu_lo)) {
    throw ValidationError("threshold bracket needs 0 <= threshold_nu_lo < threshold_nu_hi", "threshold_nu_hi");
  }
  if (s.analysis.samples < 1) throw ValidationError("samples must be positive", "samples");
  if (!(s.analysis.limiter.ds > 0.0)) throw ValidationError("limiter_ds must be positive", "limiter_ds");
  if (s.analysis.limiter.max_revolutions < 1) {
    throw ValidationError("max_revolutions must be positive", "max_revolutions");
  }
}

Settings base_settings(const std::string& name, double nu) {
  Settings s;
  s.preset = name;
  s.run.initial_data = GaussianProfile{3.105, 4.5};
  s.run.M = 4050;
  s.run.d = 4.5 * 4.5;
  s.run.nu = nu;
  s.run.scheme = {SchemeKind::rk4, 0.01};
  s.run.theta_max = 300.0;
  s.run.output.prefix = name;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2_nu0", "fig3_nu02", "fig4_nu05", "fig5_snapshot", "revolution_bound", "threshold_search"};
}

Settings preset(const std::string& name) {
  if (name == "fig2_nu0" || name == "revolution_bound" || name == "threshold_search") {
    return base_settings(name, 0.0);
  }
  if (name == "fig3_nu02") return base_settings(name, 0.2 / kReferenceBreakingTime);
  if (name == "fig4_nu05") return base_settings(name, 0.5 / kReferenceBreakingTime);
  if (name == "fig5_snapshot") {
    Settings s = base_settings(name, 0.0);
    s.run.output.snapshots.push_back({29.49, -10.0, 10.0, 2001});
    return s;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError(fmt::format("unknown preset '{}' (known: {})", name, known), "preset");
}

void apply_setting(Settings& settings, const std::string& key, const std::string& value) {
  if (key == "preset") {
    const Settings fresh = preset(to_string_value(value));
    settings.preset = fresh.preset;
    settings.run = fresh.run;
    return;
  }
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ValidationError(fmt::format("unknown key '{}'", key), key);
  try {
    it->second(settings, value);
  } catch (const ConversionError& e) {
    throw ValidationError(fmt::format("{}: {}", key, e.message), key);
  }
}

Settings parse_config_text(const std::string& text, const std::string& source) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
    int value_column;
  };
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  const auto& table = setters();
  while (std::getline(in, raw)) {
    ++line_no;
    // strip comments outside quotes
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        raw.resize(i);
        break;
      }
    }
    if (trim(raw).empty()) continue;
    const auto first = raw.find_first_not_of(" \t");
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ParseError(fmt::format("{}:{}:{}: expected 'key = value'", source, line_no, first + 1), line_no,
                       static_cast<int>(first) + 1);
    }
    const std::string key = trim(raw.substr(0, eq));
    const bool key_ok = !key.empty() && (std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_') &&
                        std::all_of(key.begin(), key.end(), [](char c) {
                          return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                        });
    if (!key_ok) {
      throw ParseError(fmt::format("{}:{}:{}: invalid key '{}'", source, line_no, first + 1, key), line_no,
                       static_cast<int>(first) + 1);
    }
    const std::string value_raw = raw.substr(eq + 1);
    const auto vstart = value_raw.find_first_not_of(" \t");
    const int value_col = static_cast<int>(eq + 2 + (vstart == std::string::npos ? 0 : vstart));
    if (trim(value_raw).empty()) {
      throw ParseError(fmt::format("{}:{}:{}: missing value for '{}'", source, line_no, value_col, key), line_no,
                       value_col);
    }
    if (key != "preset" && table.find(key) == table.end()) {
      throw ValidationError(fmt::format("{}:{}:{}: unknown key '{}'", source, line_no, first + 1, key), key);
    }
    for (const auto& e : entries) {
      if (e.key == key) {
        throw ParseError(fmt::format("{}:{}:{}: duplicate key '{}' (first set on line {})", source, line_no,
                                     first + 1, key, e.line),
                         line_no, static_cast<int>(first) + 1);
      }
    }
    entries.push_back({key, trim(value_raw), line_no, value_col});
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return apply_rank(a.key) < apply_rank(b.key); });

  Settings s = base_settings("", 0.0);
  s.preset.clear();
  s.run.output.prefix = "run";
  const bool has_preset = !entries.empty() && entries.front().key == "preset";
  for (const auto& e : entries) {
    try {
      if (e.key == "preset") {
        const std::string name = to_string_value(e.value);
        s = preset(name);
        continue;
      }
      table.at(e.key)(s, e.value);
    } catch (const ConversionError& err) {
      const int col = e.value_column + static_cast<int>(err.offset);
      throw ParseError(fmt::format("{}:{}:{}: {}: {}", source, e.line, col, e.key, err.message), e.line, col);
    } catch (const ValidationError& err) {
      throw ValidationError(fmt::format("{}:{}: {}", source, e.line, err.what()), err.field().empty() ? e.key : err.field());
    }
  }
  if (!has_preset) {
    for (const char* key : {"nu", "M", "d", "tau", "theta_max"}) {
      const bool present = std::any_of(entries.begin(), entries.end(), [&](const Entry& e) {
        return e.key == key || (std::string(key) == "nu" && e.key == "nu_theta_wb");
      });
      if (!present) s.notices.push_back(fmt::format("{} not set; using default", key));
    }
    const bool profile_given = std::any_of(entries.begin(), entries.end(), [](const Entry& e) {
      return e.key == "a_star" || e.key == "rho_star" || e.key == "table" || e.key == "peak_field";
    });
    if (!profile_given) s.notices.push_back("initial data not set; using the Gaussian a_star = 3.105, rho_star = 4.5");
  }
  validate_settings(s);
  return s;
}

Settings parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read config file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

TabulatedProfile read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read table '{}'", path));
  TabulatedProfile t;
  std::vector<std::vector<double>*> columns;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<std::string> cells;
    std::vector<std::size_t> starts;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma - start)));
      starts.push_back(start);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      for (const auto& c : cells) {
        if (c == "rho") columns.push_back(&t.rho);
        else if (c == "E0") columns.push_back(&t.E0);
        else if (c == "P0") columns.push_back(&t.P0);
        else if (c == "dE0") columns.push_back(&t.dE0);
        else if (c == "dP0") columns.push_back(&t.dP0);
        else throw ParseError(fmt::format("{}:{}: unknown column '{}'", path, line_no, c), line_no, 1);
      }
      if (columns.size() != 5) {
        throw ParseError(fmt::format("{}:{}: need columns rho,E0,P0,dE0,dP0", path, line_no), line_no, 1);
      }
      have_header = true;
      continue;
    }
    if (cells.size() != columns.size()) {
      throw ParseError(fmt::format("{}:{}: expected {} fields", path, line_no, columns.size()), line_no, 1);
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        columns[i]->push_back(to_double(cells[i]));
      } catch (const ConversionError& e) {
        const int col = static_cast<int>(starts[i]) + 1;
        throw ParseError(fmt::format("{}:{}:{}: {}", path, line_no, col, e.message), line_no, col);
      }
    }
  }
  validate_initial_data(t);
  return t;
}

std::vector<std::pair<std::string, std::string>> config_echo(const Settings& s) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto num = [](double v) { return fmt::format("{:.17g}", v); };
  out.emplace_back("preset", s.preset.empty() ? "none" : s.preset);
  if (const auto* g = std::get_if<GaussianProfile>(&s.run.initial_data)) {
    out.emplace_back("profile", "gaussian");
    out.emplace_back("a_star", num(g->a_star));
    out.emplace_back("rho_star", num(g->rho_star));
  } else {
    out.emplace_back("profile", "tabulated");
    out.emplace_back("table", s.table_path);
  }
  out.emplace_back("M", std::to_string(s.run.M));
  out.emplace_back("d", num(s.run.d));
  out.emplace_back("h", num(s.run.h()));
  out.emplace_back("nu", num(s.run.nu));
  out.emplace_back("scheme", s.run.scheme.kind == SchemeKind::rk4 ? "rk4" : "euler");
  out.emplace_back("tau", num(s.run.scheme.tau));
  out.emplace_back("theta_max", num(s.run.theta_max));
  out.emplace_back("q_max", num(s.run.monitors.q_max));
  out.emplace_back("d_min", num(s.run.monitors.d_min));
  out.emplace_back("diagnostics_every", std::to_string(s.run.diagnostics_every));
  std::string thetas;
  for (const auto& r : s.run.output.snapshots) thetas += (thetas.empty() ? "" : ",") + num(r.theta);
  out.emplace_back("snapshot_theta", "[" + thetas + "]");
  return out;
}

}  // namespace coldplasma

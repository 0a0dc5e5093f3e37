// Copyright 2026 The phonogw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// INI run configuration with explicit unit suffixes. Every value that carries
// a dimension must name its unit; unknown sections and keys are errors.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "phonogw/bec_model.hpp"
#include "phonogw/bulk.hpp"
#include "phonogw/error.hpp"
#include "phonogw/gw_channel.hpp"
#include "phonogw/phonon_counting.hpp"

namespace phonogw {

/// Channel squeezing phase relative to the seed when the config is silent.
inline constexpr double kDefaultChannelPhase = constants::kPi / 2;

enum class Dimension { None, Length, Speed, Temperature, AngularFrequency, Time, Mass, Angle };

enum class SweepAxis { Time, Frequency, Temperature, Squeezing };

inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Time: return "time";
    case SweepAxis::Frequency: return "frequency";
    case SweepAxis::Temperature: return "temperature";
    case SweepAxis::Squeezing: return "squeezing";
  }
  return "?";
}

/// A duration either in seconds or in units of 1/omega_1, resolved per point
/// so that frequency sweeps can hold omega_1 t fixed.
struct Duration {
  double value = 0;
  bool in_w1t = false;
  double seconds(double omega1) const { return in_w1t ? value / omega1 : value; }
};

struct SweepConfig {
  PhysicalParams physics;
  ModePair modes;
  double r = 0;
  double theta = 0;
  // Without a [channel] section only the oracle calibration can run.
  bool has_channel = false;
  ChannelModel channel;
  double reference_fundamental = 0;  // omega_1 at which channel.rate_per_strain holds
  double epsilon = 0;
  std::optional<double> omega;  // nullopt: resonant with the mode pair
  Duration duration;
  SweepAxis axis = SweepAxis::Time;
  std::vector<double> grid;  // SI: s, rad/s, K, or dimensionless r
  int probes = 1;
  bool cfi = false;
  CountVariant cfi_variant = CountVariant::NormalizedExact;
  bool bulk = false;
  BulkWavenumber bulk_wavenumber = BulkWavenumber::PiOverL;
  std::string output_path;
  std::string overlay_path;
  std::string canonical;
  std::uint64_t hash = 0;

  double fundamental() const { return mode_frequency(physics, 1); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct UnitEntry {
  Dimension dim;
  double factor;
};

inline const std::map<std::string, UnitEntry, std::less<>>& unit_table() {
  static const std::map<std::string, UnitEntry, std::less<>> table{
      {"m", {Dimension::Length, 1.0}},
      {"mm", {Dimension::Length, 1e-3}},
      {"um", {Dimension::Length, 1e-6}},
      {"nm", {Dimension::Length, 1e-9}},
      {"m_per_s", {Dimension::Speed, 1.0}},
      {"mm_per_s", {Dimension::Speed, 1e-3}},
      {"um_per_s", {Dimension::Speed, 1e-6}},
      {"K", {Dimension::Temperature, 1.0}},
      {"mK", {Dimension::Temperature, 1e-3}},
      {"uK", {Dimension::Temperature, 1e-6}},
      {"nK", {Dimension::Temperature, 1e-9}},
      {"rad_per_s", {Dimension::AngularFrequency, 1.0}},
      {"Hz", {Dimension::AngularFrequency, 2.0 * constants::kPi}},
      {"kHz", {Dimension::AngularFrequency, 2.0 * constants::kPi * 1e3}},
      {"s", {Dimension::Time, 1.0}},
      {"ms", {Dimension::Time, 1e-3}},
      {"us", {Dimension::Time, 1e-6}},
      {"kg", {Dimension::Mass, 1.0}},
      {"amu", {Dimension::Mass, constants::kAtomicMassUnit}},
      {"rad", {Dimension::Angle, 1.0}},
  };
  return table;
}

inline double parse_number(std::string_view text, const std::string& where) {
  const std::string t = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  require(ec == std::errc() && ptr == t.data() + t.size() && !t.empty(), ErrorKind::Parse,
          fmt::format("{}: '{}' is not a number", where, t));
  require(std::isfinite(v), ErrorKind::Parse, fmt::format("{}: value must be finite", where));
  return v;
}

// "<number> <unit>" or "<number><unit>". Returns the number and the unit text.
inline std::pair<double, std::string> split_quantity(std::string_view text,
                                                     const std::string& where) {
  const std::string t = trim(text);
  std::size_t i = 0;
  while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.' ||
                          t[i] == '-' || t[i] == '+' ||
                          ((t[i] == 'e' || t[i] == 'E') && i > 0 &&
                           i + 1 < t.size() &&
                           (std::isdigit(static_cast<unsigned char>(t[i + 1])) ||
                            t[i + 1] == '-' || t[i + 1] == '+')))) {
    ++i;
  }
  return {parse_number(t.substr(0, i), where), trim(std::string_view(t).substr(i))};
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

/// Converts "<number> <unit>" to SI. Durations in w1t are rejected here; use
/// parse_duration.
inline double parse_quantity(std::string_view text, Dimension dim, const std::string& where) {
  auto [value, unit] = detail::split_quantity(text, where);
  if (dim == Dimension::None) {
    require(unit.empty(), ErrorKind::Parse, fmt::format("{}: expected a plain number", where));
    return value;
  }
  require(!unit.empty(), ErrorKind::Parse, fmt::format("{}: missing unit suffix", where));
  const auto& table = detail::unit_table();
  const auto it = table.find(unit);
  require(it != table.end() && it->second.dim == dim, ErrorKind::Parse,
          fmt::format("{}: unit '{}' is not valid here", where, unit));
  return value * it->second.factor;
}

inline Duration parse_duration(std::string_view text, const std::string& where) {
  auto [value, unit] = detail::split_quantity(text, where);
  if (unit == "w1t") return {value, true};
  return {parse_quantity(text, Dimension::Time, where), false};
}

namespace detail {

using Tree = boost::property_tree::ptree;

class SectionReader {
 public:
  SectionReader(const Tree& root, std::string name) : name_(std::move(name)) {
    if (auto child = root.get_child_optional(name_)) tree_ = *child;
    for (const auto& [key, value] : tree_) {
      require(value.empty(), ErrorKind::Parse,
              fmt::format("[{}] {}: nested keys are not allowed", name_, key));
    }
  }

  std::optional<std::string> raw(const std::string& key) {
    seen_.insert(key);
    const auto v = tree_.get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string where(const std::string& key) const { return fmt::format("[{}] {}", name_, key); }

  std::optional<double> quantity(const std::string& key, Dimension dim) {
    auto v = raw(key);
    if (!v) return std::nullopt;
    return parse_quantity(*v, dim, where(key));
  }

  double quantity_or(const std::string& key, Dimension dim, double fallback) {
    return quantity(key, dim).value_or(fallback);
  }

  double required(const std::string& key, Dimension dim) {
    auto v = quantity(key, dim);
    require(v.has_value(), ErrorKind::Parse, fmt::format("{}: required key missing", where(key)));
    return *v;
  }

  std::optional<int> integer(const std::string& key) {
    auto v = raw(key);
    if (!v) return std::nullopt;
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    require(ec == std::errc() && ptr == v->data() + v->size() && !v->empty(), ErrorKind::Parse,
            fmt::format("{}: '{}' is not an integer", where(key), *v));
    return out;
  }

  std::optional<bool> boolean(const std::string& key) {
    auto v = raw(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    fail(ErrorKind::Parse, fmt::format("{}: '{}' is not a boolean", where(key), *v));
  }

  void finish() const {
    for (const auto& [key, value] : tree_) {
      require(seen_.count(key) > 0, ErrorKind::Parse,
              fmt::format("[{}] {}: unknown key", name_, key));
    }
  }

  const Tree& tree() const { return tree_; }

 private:
  std::string name_;
  Tree tree_;
  std::set<std::string> seen_;
};

inline const std::vector<std::string>& known_sections() {
  static const std::vector<std::string> s{"physics", "modes", "seed",  "channel",
                                          "wave",    "sweep", "output"};
  return s;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace detail

inline SweepConfig parse_config_string(const std::string& text) {
  detail::Tree root;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::Parse, fmt::format("config line {}: {}", e.line(), e.message()));
  }
  const auto& sections = detail::known_sections();
  for (const auto& [name, child] : root) {
    require(std::find(sections.begin(), sections.end(), name) != sections.end(), ErrorKind::Parse,
            fmt::format("unknown section or top-level key '{}'", name));
    require(!child.empty() || child.data().empty(), ErrorKind::Parse,
            fmt::format("'{}' must be a section", name));
  }

  SweepConfig cfg;
  // Canonical form: sections in schema order, keys sorted, values trimmed.
  for (const auto& name : sections) {
    if (auto child = root.get_child_optional(name)) {
      std::map<std::string, std::string> sorted;
      for (const auto& [key, value] : *child) sorted[key] = detail::trim(value.data());
      for (const auto& [key, value] : sorted) {
        cfg.canonical += fmt::format("{}.{}={}\n", name, key, value);
      }
    }
  }
  cfg.hash = detail::fnv1a(cfg.canonical);

  {
    detail::SectionReader s(root, "physics");
    auto& p = cfg.physics;
    p.trap_length = s.quantity_or("trap_length", Dimension::Length, p.trap_length);
    const auto speed = s.quantity("sound_speed", Dimension::Speed);
    const auto fundamental = s.quantity("fundamental", Dimension::AngularFrequency);
    require(!(speed && fundamental), ErrorKind::Parse,
            "[physics]: give sound_speed or fundamental, not both");
    if (speed) p.sound_speed = *speed;
    if (fundamental) p.sound_speed = sound_speed_for(*fundamental, p.trap_length);
    p.atom_mass = s.quantity_or("atom_mass", Dimension::Mass, p.atom_mass);
    p.chemical_potential_over_kb =
        s.quantity_or("chemical_potential", Dimension::Temperature, p.chemical_potential_over_kb);
    p.temperature = s.quantity_or("temperature", Dimension::Temperature, p.temperature);
    s.finish();
  }
  {
    detail::SectionReader s(root, "modes");
    cfg.modes.n = s.integer("n").value_or(cfg.modes.n);
    cfg.modes.m = s.integer("m").value_or(cfg.modes.m);
    s.finish();
  }
  {
    detail::SectionReader s(root, "seed");
    cfg.r = s.quantity_or("r", Dimension::None, 0.0);
    cfg.theta = s.quantity_or("theta", Dimension::Angle, 0.0);
    s.finish();
  }
  {
    detail::SectionReader s(root, "channel");
    // Units are part of these key names.
    cfg.has_channel = root.get_child_optional("channel").has_value();
    if (cfg.has_channel) {
      cfg.channel.rate_per_strain = s.required("rate_per_strain_hz", Dimension::None);
      cfg.reference_fundamental =
          s.required("reference_fundamental", Dimension::AngularFrequency);
    }
    cfg.channel.channel_phase =
        s.quantity_or("channel_phase_rad", Dimension::None, kDefaultChannelPhase);
    cfg.channel.provenance = s.raw("provenance_note").value_or("unspecified");
    s.finish();
  }
  {
    detail::SectionReader s(root, "wave");
    cfg.epsilon = s.quantity_or("epsilon", Dimension::None, 0.0);
    if (auto w = s.raw("omega"); w && *w != "resonant") {
      cfg.omega = parse_quantity(*w, Dimension::AngularFrequency, s.where("omega"));
    }
    auto d = s.raw("duration");
    require(d.has_value(), ErrorKind::Parse, "[wave] duration: required key missing");
    cfg.duration = parse_duration(*d, s.where("duration"));
    s.finish();
  }
  {
    detail::SectionReader s(root, "sweep");
    const std::string axis = s.raw("axis").value_or("time");
    Dimension dim = Dimension::Time;
    if (axis == "time") {
      cfg.axis = SweepAxis::Time;
    } else if (axis == "frequency") {
      cfg.axis = SweepAxis::Frequency;
      dim = Dimension::AngularFrequency;
    } else if (axis == "temperature") {
      cfg.axis = SweepAxis::Temperature;
      dim = Dimension::Temperature;
    } else if (axis == "squeezing") {
      cfg.axis = SweepAxis::Squeezing;
      dim = Dimension::None;
    } else {
      fail(ErrorKind::Parse, fmt::format("[sweep] axis: unknown axis '{}'", axis));
    }
    const double w1 = cfg.fundamental();
    auto value_of = [&](const std::string& text, const std::string& where) {
      if (cfg.axis == SweepAxis::Time) return parse_duration(text, where).seconds(w1);
      return parse_quantity(text, dim, where);
    };
    if (auto values = s.raw("values")) {
      for (const auto& item : detail::split_list(*values)) {
        cfg.grid.push_back(value_of(item, s.where("values")));
      }
      for (const char* key : {"start", "stop", "points", "spacing"}) {
        require(!s.raw(key).has_value(), ErrorKind::Parse,
                fmt::format("[sweep] {}: not allowed together with values", key));
      }
    } else {
      const auto start = s.raw("start");
      const auto stop = s.raw("stop");
      const auto points = s.integer("points");
      require(start && stop && points, ErrorKind::Parse,
              "[sweep]: give values, or start, stop and points");
      require(*points >= 1, ErrorKind::Parse, "[sweep] points: must be positive");
      const double a = value_of(*start, s.where("start"));
      const double b = value_of(*stop, s.where("stop"));
      const std::string spacing = s.raw("spacing").value_or("linear");
      require(spacing == "linear" || spacing == "log", ErrorKind::Parse,
              "[sweep] spacing: must be linear or log");
      if (spacing == "log") {
        require(a > 0 && b > 0, ErrorKind::Parse, "[sweep]: log spacing needs positive bounds");
      }
      for (int i = 0; i < *points; ++i) {
        const double f = *points == 1 ? 0.0 : static_cast<double>(i) / (*points - 1);
        cfg.grid.push_back(spacing == "log" ? std::exp(std::log(a) + f * (std::log(b) - std::log(a)))
                                            : a + f * (b - a));
      }
    }
    require(!cfg.grid.empty(), ErrorKind::Parse, "[sweep]: empty grid");
    for (std::size_t i = 1; i < cfg.grid.size(); ++i) {
      require(cfg.grid[i] > cfg.grid[i - 1], ErrorKind::Parse,
              "[sweep]: grid must be strictly increasing");
    }
    cfg.probes = s.integer("probes").value_or(1);
    require(cfg.probes >= 1, ErrorKind::Parse, "[sweep] probes: must be at least 1");
    cfg.cfi = s.boolean("cfi").value_or(false);
    if (auto v = s.raw("cfi_variant")) {
      if (*v == "paper_literal") {
        cfg.cfi_variant = CountVariant::PaperLiteral;
      } else if (*v == "normalized_exact") {
        cfg.cfi_variant = CountVariant::NormalizedExact;
      } else {
        fail(ErrorKind::Parse, "[sweep] cfi_variant: must be paper_literal or normalized_exact");
      }
    }
    cfg.bulk = s.boolean("bulk").value_or(false);
    if (auto v = s.raw("bulk_wavenumber")) cfg.bulk_wavenumber = parse_bulk_wavenumber(*v);
    s.finish();
  }
  {
    detail::SectionReader s(root, "output");
    cfg.output_path = s.raw("path").value_or("");
    cfg.overlay_path = s.raw("overlay").value_or("");
    s.finish();
  }

  try {
    validate(cfg.physics);
    validate(cfg.modes);
  } catch (const Error& e) {
    fail(ErrorKind::Parse, e.what());
  }
  if (cfg.has_channel) {
    require(cfg.reference_fundamental > 0 && cfg.channel.rate_per_strain >= 0, ErrorKind::Parse,
            "[channel]: rate_per_strain_hz must be >= 0 and reference_fundamental > 0");
  }
  require(cfg.duration.value >= 0, ErrorKind::Parse, "[wave] duration: must be >= 0");
  return cfg;
}

inline SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Parse, fmt::format("cannot open config '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_string(buf.str());
}

/// Physical parameters, channel and wave at one grid point.
struct PointSetup {
  PhysicalParams physics;
  double r = 0;
  ChannelModel channel;
  WaveParams wave;
};

inline PointSetup point_setup(const SweepConfig& cfg, double axis_value) {
  require(cfg.has_channel, ErrorKind::Parse,
          "config has no [channel] section; run the oracle subcommand to calibrate one");
  PointSetup pt;
  pt.physics = cfg.physics;
  pt.r = cfg.r;
  Duration duration = cfg.duration;
  switch (cfg.axis) {
    case SweepAxis::Time: duration = {axis_value, false}; break;
    case SweepAxis::Frequency:
      pt.physics.sound_speed = sound_speed_for(axis_value, pt.physics.trap_length);
      break;
    case SweepAxis::Temperature: pt.physics.temperature = axis_value; break;
    case SweepAxis::Squeezing: pt.r = axis_value; break;
  }
  const double w1 = mode_frequency(pt.physics, 1);
  pt.channel = cfg.channel;
  // The channel rate is proportional to omega_1 at fixed mode pair.
  pt.channel.rate_per_strain = cfg.channel.rate_per_strain * w1 / cfg.reference_fundamental;
  pt.wave.epsilon = cfg.epsilon;
  pt.wave.omega = cfg.omega.value_or(resonant_frequency(pt.physics, cfg.modes));
  if (cfg.omega && cfg.axis == SweepAxis::Frequency) {
    pt.wave.omega = *cfg.omega * w1 / cfg.fundamental();
  }
  pt.wave.duration = duration.seconds(w1);
  return pt;
}

}  // namespace phonogw

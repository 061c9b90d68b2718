#pragma once

// Run configuration: a single JSON document in the natural units of the
// problem (um, nm, MHz, kHz, uW, K). Conversion to SI happens once, here.
// A config may name a preset; the preset document is loaded first and the
// user document deep-merged on top (user keys win).

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfom/constants.hpp"
#include "nfom/coupling.hpp"
#include "nfom/dynamics.hpp"
#include "nfom/field.hpp"
#include "nfom/membrane.hpp"

namespace nfom::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error("config error at '" + field + "': " + message),
        field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct FieldCalibration {
  std::string preset;      // "d2.4", "d2.7", "d3.0" or "custom"
  double omega_s_prime;    // rad/s per m
  double omega_s_dprime;   // rad/s per m^2
  double z_ref;            // m
  double ring_width;       // m
  double rel_field;        // |E0m/Em|
  bool quantitative;       // false for the shape-only presets
};

struct ModeSelection {
  int j = 1;
  int k = 1;
  double quality_factor = 1.076e7;
  double omega_m_nominal = 0.0;  // rad/s; 0 means use the membrane formula
  int j_max = 3;
  int k_max = 3;
};

struct DriveSettings {
  double power = 5e-6;        // W
  double temperature = 300.0; // K
  bool red_sideband = true;   // detuning = +omega_m of the selected mode
  double detuning = 0.0;      // rad/s, used when red_sideband is false
  double omit_inset_n = 0.03;
  std::vector<double> switch_kappa_list;  // rad/s
};

struct SweepSettings {
  std::string axis;
  double min = 0.0;
  double max = 0.0;
  int steps = 0;       // 0: command default
  std::string scale;   // "linear" or "log"
};

struct OutputSettings {
  std::string dir = "out";
  std::string format = "csv";  // or "json"
};

struct RunConfig {
  std::string preset_name;
  ToroidGeometry toroid{};
  MembraneGeometry membrane{};
  OpticalParams optics{};
  double kappa_ext = 0.0;  // rad/s
  FieldCalibration field{};
  ModeSelection mode{};
  double g1_override = 0.0;  // rad/s; 0 means derive from the coupling chain
  DriveSettings drive{};
  SweepSettings sweep{};
  OutputSettings output{};
  json canonical;            // resolved document, for provenance
  std::uint64_t hash = 0;    // FNV-1a 64 of the canonical dump
};

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace detail {

inline const json* find_path(const json& root, const std::string& dotted) {
  const json* cur = &root;
  std::size_t pos = 0;
  while (pos <= dotted.size()) {
    const std::size_t dot = dotted.find('.', pos);
    const std::string key =
        dotted.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
    if (dot == std::string::npos) return cur;
    pos = dot + 1;
  }
  return nullptr;
}

inline double num_at(const json& root, const std::string& dotted) {
  const json* v = find_path(root, dotted);
  if (v == nullptr || !v->is_number())
    throw ConfigError(dotted, "missing or not a number");
  return v->get<double>();
}

inline int int_at(const json& root, const std::string& dotted) {
  const json* v = find_path(root, dotted);
  if (v == nullptr || !v->is_number_integer())
    throw ConfigError(dotted, "missing or not an integer");
  return v->get<int>();
}

inline std::string str_at(const json& root, const std::string& dotted) {
  const json* v = find_path(root, dotted);
  if (v == nullptr || !v->is_string())
    throw ConfigError(dotted, "missing or not a string");
  return v->get<std::string>();
}

inline double positive_at(const json& root, const std::string& dotted) {
  const double v = num_at(root, dotted);
  if (!(v > 0.0)) throw ConfigError(dotted, "must be > 0");
  return v;
}

}  // namespace detail

// Built-in run presets. "flagship" carries the reference geometry; the others
// are patches on top of it.
inline json preset_document(const std::string& name) {
  json flagship = {
      {"preset", "flagship"},
      {"geometry",
       {{"toroid",
         {{"major_diameter_um", 20.0}, {"minor_diameter_um", 2.4}, {"gap_nm", 15.0}}},
        {"membrane", {{"lx_um", 40.0}, {"ly_um", 40.0}, {"h_nm", 50.0}}}}},
      {"materials",
       {{"density_kg_m3", 2700.0},
        {"tension_gpa", 1.0},
        {"n_sin_re", 2.0},
        {"n_sin_im", 0.6e-6}}},
      {"optics",
       {{"wavelength_nm", 850.0}, {"kappa_mhz", 5.0}, {"kappa_ext_fraction", 0.5}}},
      {"field", {{"preset", "d2.4"}, {"ring_width_um", 0.5}, {"rel_field", 0.15}}},
      {"mode",
       {{"j", 1},
        {"k", 1},
        {"quality_factor", 1.076e7},
        {"omega_m_nominal_mhz", 0.0},
        {"j_max", 3},
        {"k_max", 3}}},
      {"overrides", {{"g1_khz", 0.0}}},
      {"drive",
       {{"power_uw", 5.0},
        {"temperature_k", 300.0},
        {"detuning", "red_sideband"},
        {"omit_inset_n", 0.03},
        {"switch_kappa_list_mhz", {3.0, 5.0, 7.0}}}},
      {"sweep",
       {{"axis", ""}, {"min", 0.0}, {"max", 0.0}, {"steps", 0}, {"scale", ""}}},
      {"output", {{"dir", "out"}, {"format", "csv"}}},
  };

  if (name == "flagship") return flagship;
  if (name == "table1") {
    flagship["preset"] = "table1";
    flagship["geometry"]["membrane"]["lx_um"] = 50.0;
    flagship["geometry"]["membrane"]["ly_um"] = 50.0;
    flagship["mode"]["j"] = 1;
    flagship["mode"]["k"] = 2;
    flagship["mode"]["quality_factor"] = 1.2e7;
    return flagship;
  }
  if (name == "entangle") {
    // Room-temperature entanglement scenario: nominal 10 MHz mode pinned to
    // g1/2pi = 20 kHz, kappa/2pi = 30 MHz, Qm = 1e6, 5 uW drive.
    flagship["preset"] = "entangle";
    flagship["optics"]["kappa_mhz"] = 30.0;
    flagship["mode"]["quality_factor"] = 1.0e6;
    flagship["mode"]["omega_m_nominal_mhz"] = 10.0;
    flagship["overrides"]["g1_khz"] = 20.0;
    return flagship;
  }
  if (name == "omit") {
    // Transparency/switching scenario: quadratic-coupling mode held at the
    // nominal 10 MHz with gamma_m/2pi = 1 Hz and g1/2pi = 20 kHz.
    flagship["preset"] = "omit";
    flagship["mode"]["j"] = 1;
    flagship["mode"]["k"] = 2;
    flagship["mode"]["quality_factor"] = 1.0e7;
    flagship["mode"]["omega_m_nominal_mhz"] = 10.0;
    flagship["overrides"]["g1_khz"] = 20.0;
    return flagship;
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

// Field-calibration presets for the three minor diameters. Only d = 2.4 um
// carries the quantitative reference derivatives; the other two reproduce the
// qualitative shape of the family (smaller d couples more strongly).
struct FieldPresetValues {
  double ghz_per_nm;
  double mhz_per_nm2;
  bool quantitative;
};

inline FieldPresetValues field_preset_values(const std::string& name) {
  if (name == "d2.4") return {7.0, 120.0, true};
  if (name == "d2.7") return {4.2, 70.0, false};
  if (name == "d3.0") return {2.5, 40.0, false};
  throw ConfigError("field.preset", "unknown field preset '" + name + "'");
}

inline RunConfig parse_config(json user) {
  std::string preset = "flagship";
  if (user.contains("preset")) {
    if (!user["preset"].is_string()) throw ConfigError("preset", "must be a string");
    preset = user["preset"].get<std::string>();
  }
  json doc = preset_document(preset);
  doc.merge_patch(user);

  RunConfig cfg;
  cfg.preset_name = preset;

  cfg.toroid.major_diameter =
      detail::positive_at(doc, "geometry.toroid.major_diameter_um") * 1e-6;
  cfg.toroid.minor_diameter =
      detail::positive_at(doc, "geometry.toroid.minor_diameter_um") * 1e-6;
  cfg.toroid.gap = detail::positive_at(doc, "geometry.toroid.gap_nm") * 1e-9;
  try {
    cfg.toroid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("geometry.toroid", e.what());
  }

  cfg.membrane.length_x = detail::positive_at(doc, "geometry.membrane.lx_um") * 1e-6;
  cfg.membrane.length_y = detail::positive_at(doc, "geometry.membrane.ly_um") * 1e-6;
  cfg.membrane.thickness = detail::positive_at(doc, "geometry.membrane.h_nm") * 1e-9;
  cfg.membrane.density = detail::positive_at(doc, "materials.density_kg_m3");
  cfg.membrane.tension = detail::positive_at(doc, "materials.tension_gpa") * 1e9;

  const double wavelength = detail::positive_at(doc, "optics.wavelength_nm") * 1e-9;
  const double kappa = detail::positive_at(doc, "optics.kappa_mhz") * 1e6 *
                       constants::two_pi;
  const double n_re = detail::num_at(doc, "materials.n_sin_re");
  const double n_im = detail::num_at(doc, "materials.n_sin_im");
  try {
    cfg.optics = make_optical_params(wavelength, kappa, {n_re, n_im});
  } catch (const std::invalid_argument& e) {
    throw ConfigError("materials.n_sin_re", e.what());
  }
  const double ext_fraction = detail::num_at(doc, "optics.kappa_ext_fraction");
  if (!(ext_fraction > 0.0) || ext_fraction > 1.0)
    throw ConfigError("optics.kappa_ext_fraction", "must be in (0, 1]");
  cfg.kappa_ext = ext_fraction * kappa;

  cfg.field.preset = detail::str_at(doc, "field.preset");
  cfg.field.ring_width = detail::positive_at(doc, "field.ring_width_um") * 1e-6;
  cfg.field.rel_field = detail::num_at(doc, "field.rel_field");
  if (cfg.field.preset == "custom") {
    cfg.field.omega_s_prime =
        detail::positive_at(doc, "field.omega_s_prime_ghz_per_nm") * 1e18 *
        constants::two_pi;
    const double dd = detail::num_at(doc, "field.omega_s_dprime_mhz_per_nm2");
    if (!(dd < 0.0))
      throw ConfigError("field.omega_s_dprime_mhz_per_nm2", "must be < 0");
    cfg.field.omega_s_dprime = dd * 1e24 * constants::two_pi;
    cfg.field.z_ref = detail::positive_at(doc, "field.z_ref_nm") * 1e-9;
    cfg.field.quantitative = true;
  } else {
    const FieldPresetValues v = field_preset_values(cfg.field.preset);
    cfg.field.omega_s_prime = v.ghz_per_nm * 1e18 * constants::two_pi;
    cfg.field.omega_s_dprime = -v.mhz_per_nm2 * 1e24 * constants::two_pi;
    cfg.field.z_ref = 15e-9;
    cfg.field.quantitative = v.quantitative;
  }

  cfg.mode.j = detail::int_at(doc, "mode.j");
  cfg.mode.k = detail::int_at(doc, "mode.k");
  cfg.mode.quality_factor = detail::positive_at(doc, "mode.quality_factor");
  const double nominal_mhz = detail::num_at(doc, "mode.omega_m_nominal_mhz");
  if (nominal_mhz < 0.0) throw ConfigError("mode.omega_m_nominal_mhz", "must be >= 0");
  cfg.mode.omega_m_nominal = nominal_mhz * 1e6 * constants::two_pi;
  cfg.mode.j_max = detail::int_at(doc, "mode.j_max");
  cfg.mode.k_max = detail::int_at(doc, "mode.k_max");
  if (cfg.mode.j_max < 0 || cfg.mode.k_max < 0 || cfg.mode.j_max > kMaxModeIndex ||
      cfg.mode.k_max > kMaxModeIndex)
    throw ConfigError("mode.j_max", "index range must be within [0, 50]");

  const double g1_khz = detail::num_at(doc, "overrides.g1_khz");
  if (g1_khz < 0.0) throw ConfigError("overrides.g1_khz", "must be >= 0");
  cfg.g1_override = g1_khz * 1e3 * constants::two_pi;

  const double power_uw = detail::num_at(doc, "drive.power_uw");
  if (power_uw < 0.0) throw ConfigError("drive.power_uw", "must be >= 0");
  cfg.drive.power = power_uw * 1e-6;
  const double temperature = detail::num_at(doc, "drive.temperature_k");
  if (temperature < 0.0) throw ConfigError("drive.temperature_k", "must be >= 0");
  cfg.drive.temperature = temperature;
  const json* det = detail::find_path(doc, "drive.detuning");
  if (det == nullptr || (!det->is_string() && !det->is_number()))
    throw ConfigError("drive.detuning", "must be \"red_sideband\" or a number (MHz)");
  if (det->is_string()) {
    if (det->get<std::string>() != "red_sideband")
      throw ConfigError("drive.detuning", "unknown detuning keyword");
    cfg.drive.red_sideband = true;
  } else {
    cfg.drive.red_sideband = false;
    cfg.drive.detuning = det->get<double>() * 1e6 * constants::two_pi;
  }
  cfg.drive.omit_inset_n = detail::positive_at(doc, "drive.omit_inset_n");
  const json* klist = detail::find_path(doc, "drive.switch_kappa_list_mhz");
  if (klist == nullptr || !klist->is_array() || klist->empty())
    throw ConfigError("drive.switch_kappa_list_mhz", "must be a non-empty array");
  for (const auto& v : *klist) {
    if (!v.is_number() || !(v.get<double>() > 0.0))
      throw ConfigError("drive.switch_kappa_list_mhz", "entries must be > 0");
    cfg.drive.switch_kappa_list.push_back(v.get<double>() * 1e6 * constants::two_pi);
  }

  cfg.sweep.axis = detail::str_at(doc, "sweep.axis");
  cfg.sweep.min = detail::num_at(doc, "sweep.min");
  cfg.sweep.max = detail::num_at(doc, "sweep.max");
  cfg.sweep.steps = detail::int_at(doc, "sweep.steps");
  cfg.sweep.scale = detail::str_at(doc, "sweep.scale");
  if (cfg.sweep.steps < 0) throw ConfigError("sweep.steps", "must be >= 0");
  if (cfg.sweep.steps == 1) throw ConfigError("sweep.steps", "sweeps need >= 2 steps");
  if (cfg.sweep.steps > 0 && !(cfg.sweep.max > cfg.sweep.min))
    throw ConfigError("sweep.max", "sweep range must be non-empty");

  cfg.output.dir = detail::str_at(doc, "output.dir");
  cfg.output.format = detail::str_at(doc, "output.format");
  if (cfg.output.format != "csv" && cfg.output.format != "json")
    throw ConfigError("output.format", "must be \"csv\" or \"json\"");

  try {
    cfg.membrane.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("geometry.membrane", e.what());
  }

  cfg.canonical = doc;
  cfg.hash = fnv1a64(doc.dump());
  return cfg;
}

inline RunConfig default_config(const std::string& preset = "flagship") {
  return parse_config(json{{"preset", preset}});
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", "cannot open '" + path + "'");
  json user;
  try {
    in >> user;
  } catch (const json::parse_error& e) {
    throw ConfigError("file", std::string("JSON parse failure: ") + e.what());
  }
  if (!user.is_object()) throw ConfigError("file", "top level must be an object");
  return parse_config(std::move(user));
}

// Calibrated field model for the configured preset.
inline FieldModel resolve_field(const RunConfig& cfg) {
  return calibrate_field_model(cfg.field.omega_s_prime, cfg.field.omega_s_dprime,
                               cfg.field.z_ref, cfg.field.ring_width,
                               cfg.field.rel_field, cfg.toroid, cfg.optics,
                               cfg.membrane.thickness);
}

// Configured mechanical mode; a nominal frequency replaces the formula value
// (and re-derives x_zpf and gamma_m) when set.
inline MechanicalMode resolve_mode(const RunConfig& cfg) {
  MechanicalMode m = build_mode(cfg.membrane, cfg.mode.j, cfg.mode.k,
                                cfg.mode.quality_factor);
  if (cfg.mode.omega_m_nominal > 0.0) {
    m.omega_m = cfg.mode.omega_m_nominal;
    m.x_zpf = zero_point_amplitude(m.m_eff, m.omega_m);
    m.gamma_m = m.omega_m / cfg.mode.quality_factor;
  }
  return m;
}

// g1 for the dynamics commands: explicit override or the full coupling chain.
inline double resolve_g1(const RunConfig& cfg, const MechanicalMode& mode,
                         const FieldModel& field) {
  if (cfg.g1_override > 0.0) return cfg.g1_override;
  const CouplingRates r = coupling_rates(mode, field, cfg.toroid, cfg.membrane, {},
                                         cfg.optics.kappa);
  return std::abs(r.g1);
}

inline DriveConfig resolve_drive(const RunConfig& cfg, const MechanicalMode& mode) {
  DriveConfig d;
  d.power = cfg.drive.power;
  d.wavelength = cfg.optics.wavelength;
  d.detuning = cfg.drive.red_sideband ? mode.omega_m : cfg.drive.detuning;
  d.kappa = cfg.optics.kappa;
  d.kappa_ext = cfg.kappa_ext;
  return d;
}

}  // namespace nfom::cli

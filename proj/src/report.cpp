#include "fluctlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fluctlab/errors.hpp"

namespace fluctlab {

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::gaussian_interval: return "gaussian_interval";
    case Theorem::gaussian_trace: return "gaussian_trace";
    case Theorem::lemma_prob_x: return "lemma_prob_x";
    case Theorem::lemma_densities: return "lemma_densities";
    case Theorem::thm_prob_nu: return "thm_prob_nu";
    case Theorem::thm_prob_nu_jl: return "thm_prob_nu_jl";
    case Theorem::thm_densities: return "thm_densities";
    case Theorem::rcm: return "rcm";
    case Theorem::trace_modulus: return "trace_modulus";
    case Theorem::interval_modulus: return "interval_modulus";
    case Theorem::gaussian_independence: return "gaussian_independence";
    case Theorem::partition_identity: return "partition_identity";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_vacuously: return "holds-vacuously";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict judge(double bound, const TailEstimate& estimate) {
  if (bound >= 1.0) return Verdict::holds_vacuously;
  if (estimate.wilson_low > bound) return Verdict::violated;
  if (estimate.frequency <= bound + 3.0 * estimate.half_width()) return Verdict::holds;
  return Verdict::inconclusive;
}

int exit_code_for(const std::vector<BoundReport>& reports) {
  bool any_violated = false, any_inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::violated) any_violated = true;
    if (r.verdict == Verdict::inconclusive) any_inconclusive = true;
  }
  if (any_violated) return 2;
  if (any_inconclusive) return 3;
  return 0;
}

namespace {

// 17 significant digits round-trip doubles exactly
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_cell(double v) { return std::isnan(v) ? std::string() : fmt(v); }

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_csv(const std::vector<BoundReport>& reports) {
  std::string out =
      "theorem,n,ell,s,delta,alpha,r,trials,seed,bound,frequency,wilson_low,wilson_high,verdict\n";
  for (const auto& rep : reports) {
    out += to_string(rep.theorem);
    out += ',';
    out += std::to_string(rep.n);
    out += ',';
    out += fmt_cell(rep.ell);
    out += ',';
    out += fmt_cell(rep.s);
    out += ',';
    out += fmt_cell(rep.delta);
    out += ',';
    out += fmt_cell(rep.alpha);
    out += ',';
    out += fmt_cell(rep.r);
    out += ',';
    out += rep.empirical ? std::to_string(rep.empirical->trials) : std::string();
    out += ',';
    out += std::to_string(rep.seed);
    out += ',';
    out += fmt(rep.bound_value);
    out += ',';
    out += rep.empirical ? fmt(rep.empirical->frequency) : std::string();
    out += ',';
    out += rep.empirical ? fmt(rep.empirical->wilson_low) : std::string();
    out += ',';
    out += rep.empirical ? fmt(rep.empirical->wilson_high) : std::string();
    out += ',';
    out += to_string(rep.verdict);
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<BoundReport>& reports, std::uint64_t seed) {
  std::string out = "{\n  \"seed\": " + std::to_string(seed) + ",\n  \"reports\": [";
  bool first = true;
  for (const auto& rep : reports) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"theorem\": \"";
    out += to_string(rep.theorem);
    out += "\", \"params\": {\"n\": " + std::to_string(rep.n);
    if (!std::isnan(rep.ell)) out += ", \"ell\": " + fmt(rep.ell);
    if (!std::isnan(rep.s)) out += ", \"s\": " + fmt(rep.s);
    if (!std::isnan(rep.delta)) out += ", \"delta\": " + fmt(rep.delta);
    if (!std::isnan(rep.alpha)) out += ", \"alpha\": " + fmt(rep.alpha);
    if (!std::isnan(rep.r)) out += ", \"r\": " + fmt(rep.r);
    for (const auto& [key, value] : rep.extra)
      out += ", \"" + json_escape(key) + "\": " + fmt(value);
    out += ", \"seed\": " + std::to_string(rep.seed) + "}";
    out += ", \"bound\": " + fmt(rep.bound_value);
    if (rep.empirical) {
      out += ", \"empirical\": {\"hits\": " + std::to_string(rep.empirical->hits) +
             ", \"trials\": " + std::to_string(rep.empirical->trials) +
             ", \"frequency\": " + fmt(rep.empirical->frequency) +
             ", \"wilson_low\": " + fmt(rep.empirical->wilson_low) +
             ", \"wilson_high\": " + fmt(rep.empirical->wilson_high) + "}";
    } else {
      out += ", \"empirical\": null";
    }
    out += ", \"verdict\": \"";
    out += to_string(rep.verdict);
    out += "\"";
    if (!rep.note.empty()) out += ", \"note\": \"" + json_escape(rep.note) + "\"";
    out += "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

void emit_report(const std::vector<BoundReport>& reports, std::uint64_t seed,
                 const std::string& prefix) {
  if (reports.empty()) throw Error("io-error", "nothing to emit");
  const std::filesystem::path base(prefix);
  if (base.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(base.parent_path(), ec);
  }
  for (const char* suffix : {".csv", ".json"}) {
    std::ofstream f(prefix + suffix, std::ios::binary);
    if (!f) throw Error("io-error", std::string("cannot write ") + prefix + suffix);
    f << (suffix[1] == 'c' ? to_csv(reports) : to_json(reports, seed));
    if (!f.good()) throw Error("io-error", std::string("write failed for ") + prefix + suffix);
  }
}

}  // namespace fluctlab

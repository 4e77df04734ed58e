#include "laxton/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace laxton {

namespace {

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json list_json(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::string list_str(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string bool_str(const std::optional<bool>& b) {
  if (!b) return "";
  return *b ? "true" : "false";
}

std::string timing_str(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

// Quotes only when needed.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json instance_json(const Int& P, const Int& Q, std::uint64_t p) {
  Json j;
  j["P"] = int_json(P);
  j["Q"] = int_json(Q);
  j["p"] = p;
  return j;
}

Json predicted_json(const Prediction& pr) {
  Json j;
  j["case"] = pr.case_label;
  j["kstar_gstar"] = group_json(pr.kstar_gstar);
  j["g_over_k"] = pr.g_over_k ? group_json(*pr.g_over_k) : Json(nullptr);
  j["free_rank"] = pr.free_rank;
  j["h_equals_k"] = opt_bool(pr.h_equals_k);
  j["g_equals_h"] = opt_bool(pr.g_equals_h);
  if (!pr.g_over_k_alternatives.empty()) {
    Json alts = Json::array();
    for (auto& g : pr.g_over_k_alternatives) alts.push_back(group_json(g));
    j["alternatives"] = alts;
  }
  if (!pr.in_range) j["exclusion"] = pr.exclusion;
  return j;
}

}  // namespace

Json group_json(const GroupDesc& g) {
  Json j;
  j["finite"] = list_json(g.finite);
  j["free_rank"] = g.free_rank;
  return j;
}

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    a.push_back(j);
  }
  return a;
}

Json record_json(const RecurrenceParams& params, const StructureReport& rep, std::optional<double> timing_ms) {
  Json j;
  j["instance"] = instance_json(params.P, params.Q, rep.p);
  j["splitting"] = to_string(rep.splitting);
  j["s"] = rep.s;
  j["d0"] = int_json(rep.d0);
  j["rank"] = rep.r;
  j["g_order"] = rep.g_order;
  j["gstar_order"] = rep.gstar_order;
  Json inv;
  inv["g_fp"] = list_json(rep.g_invariants);
  inv["gstar_fp"] = list_json(rep.gstar_invariants);
  j["invariants"] = inv;
  j["predicted"] = predicted_json(rep.predicted);
  j["verdict"] = to_string(rep.verdict);
  Json comp;
  comp["kstar_gstar"] = group_json(rep.computed.kstar_gstar);
  comp["g_over_k"] = group_json(rep.computed.g_over_k);
  comp["h_equals_k"] = rep.computed.h_equals_k;
  comp["g_equals_h"] = rep.computed.g_equals_h;
  comp["unit_quotient"] = list_json(rep.computed.unit_quotient);
  if (!rep.computed.branch.empty()) comp["branch"] = rep.computed.branch;
  j["computed"] = comp;
  j["checks"] = checks_json(rep.checks);
  j["schema"] = kSchemaVersion;
  if (timing_ms) j["timing_ms"] = std::round(*timing_ms * 1000.0) / 1000.0;
  return j;
}

Json error_json(const Int& P, const Int& Q, std::uint64_t p, const std::string& message) {
  Json j;
  j["instance"] = instance_json(P, Q, p);
  j["verdict"] = "error";
  j["error"] = message;
  j["schema"] = kSchemaVersion;
  return j;
}

std::string csv_header(bool timing) {
  std::string h =
      "P,Q,p,splitting,s,d0,rank,g_order,gstar_order,g_fp,gstar_fp,case,pred_kstar_gstar,pred_g_over_k,"
      "pred_free_rank,pred_h_equals_k,pred_g_equals_h,verdict,comp_kstar_gstar,comp_g_over_k,unit_quotient,"
      "checks_failed,schema";
  if (timing) h += ",timing_ms";
  return h;
}

std::string csv_row(const RecurrenceParams& params, const StructureReport& rep, std::optional<double> timing_ms) {
  const Prediction& pr = rep.predicted;
  std::size_t failed = 0;
  for (auto& c : rep.checks) failed += c.pass ? 0 : 1;
  std::vector<std::string> cells{
      params.P.get_str(),
      params.Q.get_str(),
      std::to_string(rep.p),
      to_string(rep.splitting),
      std::to_string(rep.s),
      rep.d0.get_str(),
      std::to_string(rep.r),
      std::to_string(rep.g_order),
      std::to_string(rep.gstar_order),
      list_str(rep.g_invariants),
      list_str(rep.gstar_invariants),
      pr.case_label,
      pr.kstar_gstar.str(),
      pr.g_over_k ? pr.g_over_k->str() : "",
      std::to_string(pr.free_rank),
      bool_str(pr.h_equals_k),
      bool_str(pr.g_equals_h),
      to_string(rep.verdict),
      rep.computed.kstar_gstar.str(),
      rep.computed.g_over_k.str(),
      list_str(rep.computed.unit_quotient),
      std::to_string(failed),
      std::to_string(kSchemaVersion),
  };
  if (timing_ms) cells.push_back(timing_str(*timing_ms));
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  return out;
}

std::string csv_error_row(const Int& P, const Int& Q, std::uint64_t p, const std::string& message, bool timing) {
  // Same column count as csv_header; the error text goes in the verdict column.
  std::vector<std::string> cells(23 + (timing ? 1 : 0));
  cells[0] = P.get_str();
  cells[1] = Q.get_str();
  cells[2] = std::to_string(p);
  cells[17] = "error: " + message;
  cells[22] = std::to_string(kSchemaVersion);
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  return out;
}

Json membership_json(const Instance& inst, const MembershipReport& m) {
  Json j;
  j["instance"] = instance_json(inst.params().P, inst.params().Q, inst.p());
  Json cls = Json::array();
  cls.push_back(m.cls.rep.w1().get_str());
  cls.push_back(m.cls.rep.w0().get_str());
  j["class"] = cls;
  j["splitting"] = to_string(inst.splitting());
  j["lambda"] = lambda_norm(m.cls.rep).get_str();
  Json raw = Json::array({m.raw_reduction.w1, m.raw_reduction.w0});
  j["raw_reduction"] = raw;
  j["reduced_point"] = m.reduced_point ? Json::array({m.reduced_point->w1, m.reduced_point->w0}) : Json(nullptr);
  Json vals = Json::array();
  for (long v : m.valuations) vals.push_back(v);
  j["valuations"] = vals;
  j["V"] = m.V ? Json(*m.V) : Json(nullptr);
  j["in_K"] = m.in_K;
  j["in_G"] = m.in_G;
  j["in_H"] = m.in_H;
  j["power_to_G"] = m.power_to_G ? Json(*m.power_to_G) : Json(nullptr);
  return j;
}

}  // namespace laxton

// laxton: command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "laxton/classifier.hpp"
#include "laxton/equivalence.hpp"
#include "laxton/finite_group.hpp"
#include "laxton/report.hpp"
#include "laxton/sweep.hpp"

using namespace laxton;

namespace {

enum Exit : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kInvalid = 3,
  kNotInvertible = 4,
  kIo = 5,
  kTooLarge = 6,
  kDomain = 7,
  kContext = 8,
};

const char* kFooter = R"(Exit codes:
  0  success, all verdicts match or out-of-formula-range
  1  mismatch verdict, failed check, or an instance that raised an error
  2  usage error
  3  invalid input (bad integer, D = 0, p not prime, p | Q, ...)
  4  not invertible in the chosen ring
  5  I/O failure
  6  instance too large
  7  operation outside its domain
  8  operands from different settings

Negative values: -P -1 and -Q -5 work as written. Operands that start with
'-' must follow a -- guard, e.g.  laxton law mul -P 1 -Q -1 -- -2,1 1,1

LAXTON_JOBS sets the default for --jobs.)";

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return kInvalid;
    case ErrorKind::NotInvertible: return kNotInvertible;
    case ErrorKind::ContextMismatch: return kContext;
    case ErrorKind::Domain: return kDomain;
    case ErrorKind::TooLarge: return kTooLarge;
  }
  return kInvalid;
}

Int parse_int(const std::string& s, const std::string& what) {
  try {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Int(t, 10);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "bad integer for " + what + ": '" + s + "'");
  }
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s, "operand"));
  Int n = parse_int(s.substr(0, slash), "operand");
  Int d = parse_int(s.substr(slash + 1), "operand");
  if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
  return frac(n, d);
}

std::pair<Rat, Rat> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw Error(ErrorKind::InvalidInput, "operand must look like w1,w0: '" + s + "'");
  return {parse_rat(s.substr(0, comma)), parse_rat(s.substr(comma + 1))};
}

std::uint64_t parse_prime(const std::string& s) {
  Int v = parse_int(s, "-p");
  if (v < 2 || !v.fits_ulong_p()) throw Error(ErrorKind::InvalidInput, "p must be a prime below 2^64");
  std::uint64_t p = v.get_ui();
  if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidInput, s + " is not prime");
  return p;
}

std::string fmt_list(const std::vector<std::uint64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

std::string fmt_point(const FpVec& v) { return "[" + std::to_string(v.w1) + "," + std::to_string(v.w0) + "]"; }

int default_jobs() {
  if (const char* env = std::getenv("LAXTON_JOBS")) {
    try {
      int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

struct Common {
  std::string P = "1", Q = "-1";
  std::string p;
  long prime_bound = 0;
  long pq_box = -1;
  int jobs = 1;
  bool no_timing = false;
  std::string format;
  std::string output;
  long samples = 4;
  bool check = false;
  bool star = false;
  bool differential = false;
  std::string ring = "Q";
  long nu = 1;
  std::string P_range, Q_range;
  bool irreducible_only = false;
  std::vector<std::string> operands;
};

RecurrenceParams params_of(const Common& c) { return RecurrenceParams(parse_int(c.P, "-P"), parse_int(c.Q, "-Q")); }

std::vector<std::uint64_t> primes_of(const Common& c) {
  if (!c.p.empty()) return {parse_prime(c.p)};
  if (c.prime_bound > 0) return primes_below(static_cast<std::uint64_t>(c.prime_bound));
  throw Error(ErrorKind::InvalidInput, "give -p or --prime-bound");
}

// Output goes to --output when set.
class Out {
 public:
  explicit Out(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::ios_base::failure("cannot open " + path);
  }
  std::ostream& s() { return file_ ? *file_ : std::cout; }
  void finish() {
    s().flush();
    if (!s()) throw std::ios_base::failure("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_rank(const Common& c) {
  RecurrenceParams params = params_of(c);
  Out out(c.output);
  bool json = c.format == "json";
  bool all_ok = true;
  if (!json) out.s() << "p\tr" << (c.check ? "\tgroup_order\torder_of_01\tdivides" : "") << "\tnote\n";
  for (std::uint64_t p : primes_of(c)) {
    if (mod(params.Q, Int(static_cast<unsigned long>(p))) == 0) {
      if (json) {
        Json j;
        j["p"] = p;
        j["r"] = nullptr;
        j["note"] = "p divides Q";
        out.s() << j.dump() << '\n';
      } else {
        out.s() << p << "\t-" << (c.check ? "\t-\t-\t-" : "") << "\tp divides Q\n";
      }
      continue;
    }
    RankResult rr = rank(params, p);
    Json j;
    j["p"] = p;
    j["r"] = rr.r;
    std::string row = std::to_string(p) + "\t" + std::to_string(rr.r);
    if (c.check) {
      auto G = enumerate_G(params, p);
      bool order_ok = rank_by_group(G) == rr.r;
      // |G_Fp(f)| = p - (D/p); for p = 2 the enumerated order stands in.
      std::uint64_t target = p == 2 ? G.order() : p - kronecker(params.D, Int(static_cast<unsigned long>(p)));
      bool divides = target % rr.r == 0;
      all_ok = all_ok && order_ok && divides;
      j["group_order"] = G.order();
      j["order_of_01"] = order_ok;
      j["divides"] = divides;
      row += "\t" + std::to_string(G.order()) + "\t" + (order_ok ? "ok" : "FAIL") + "\t" + (divides ? "ok" : "FAIL");
    }
    if (json)
      out.s() << j.dump() << '\n';
    else
      out.s() << row << "\t\n";
  }
  out.finish();
  return all_ok ? kOk : kMismatch;
}

int cmd_law(const std::string& op, const Common& c) {
  RecurrenceParams params = params_of(c);
  SettingPtr s = make_setting(params, RingCtx::parse(c.ring));
  std::size_t need = op == "mul" ? 2 : 1;
  if (c.operands.size() != need)
    throw Error(ErrorKind::InvalidInput, "law " + op + " takes " + std::to_string(need) + " operand(s)");
  auto [a1, a0] = parse_pair(c.operands[0]);
  ClassVector a(a1, a0, s);
  std::optional<ClassVector> res;
  bool agree = true;
  if (op == "mul") {
    auto [b1, b0] = parse_pair(c.operands[1]);
    ClassVector b(b1, b0, s);
    res = mul(a, b);
    if (c.differential) {
      ClassVector alt = laxton_mul(a, b);
      agree = alt == *res;
      if (!agree) std::cerr << "differential: mul gives " << res->str() << ", laxton_mul gives " << alt.str() << '\n';
    }
  } else if (op == "inv") {
    res = inv(a);
  } else {
    res = b_act(a, c.nu);
  }
  Out out(c.output);
  if (c.format == "json") {
    Json j;
    j["op"] = op;
    j["ring"] = s->ctx.name();
    j["result"] = Json::array({res->w1().get_str(), res->w0().get_str()});
    j["lambda"] = lambda_norm(*res).get_str();
    if (c.differential) j["differential"] = agree;
    out.s() << j.dump() << '\n';
  } else {
    out.s() << res->str() << '\n';
  }
  out.finish();
  return agree ? kOk : kMismatch;
}

GClass class_operand(const Common& c, const RecurrenceParams& params) {
  if (c.operands.size() != 1) throw Error(ErrorKind::InvalidInput, "expected one operand w1,w0");
  auto [w1, w0] = parse_pair(c.operands[0]);
  return normalize(ClassVector(w1, w0, make_setting(params, RingCtx::rationals())));
}

int cmd_reduce(const Common& c) {
  RecurrenceParams params = params_of(c);
  std::uint64_t p = parse_prime(c.p);
  GClass a = class_operand(c, params);
  FpLaw law(params, p);
  FpVec raw = reduce_p(a, p);
  FpVec pt = law.normalize(raw.w1, raw.w0);
  bool in_g = law.lambda(pt.w1, pt.w0) != 0;
  Out out(c.output);
  if (c.format == "json") {
    Json j;
    j["class"] = Json::array({a.rep.w1().get_str(), a.rep.w0().get_str()});
    j["p"] = p;
    j["raw"] = Json::array({raw.w1, raw.w0});
    j["point"] = Json::array({pt.w1, pt.w0});
    j["in_G_fp"] = in_g;
    out.s() << j.dump() << '\n';
  } else {
    out.s() << fmt_point(raw) << " = " << fmt_point(pt) << (in_g ? "" : "  (Lambda = 0 mod p, outside G_Fp(f))") << '\n';
  }
  out.finish();
  return kOk;
}

int cmd_classify(const Common& c) {
  RecurrenceParams params = params_of(c);
  Instance inst(params, parse_prime(c.p));
  GClass a = class_operand(c, params);
  MembershipReport m = membership(inst, a);
  Out out(c.output);
  if (c.format == "json") {
    out.s() << membership_json(inst, m).dump() << '\n';
  } else {
    auto& o = out.s();
    o << "class      [" << a.rep.w1() << "," << a.rep.w0() << "]  P=" << params.P << " Q=" << params.Q
      << " p=" << inst.p() << " (" << to_string(inst.splitting()) << ")\n";
    o << "Lambda     " << lambda_norm(a.rep) << '\n';
    o << "reduction  " << fmt_point(m.raw_reduction);
    if (m.reduced_point)
      o << " = " << fmt_point(*m.reduced_point) << " in G_Fp(f)\n";
    else
      o << " (outside G_Fp(f))\n";
    o << "valuations";
    for (long v : m.valuations) o << ' ' << v;
    if (m.V) o << "  V = " << *m.V;
    o << '\n';
    o << "in_K " << std::boolalpha << m.in_K << "  in_G " << m.in_G << "  in_H " << m.in_H << '\n';
    if (m.power_to_G) o << "least n with a^n in G(f,p): " << *m.power_to_G << '\n';
  }
  out.finish();
  return kOk;
}

int cmd_finite_group(const Common& c) {
  RecurrenceParams params = params_of(c);
  std::uint64_t p = parse_prime(c.p);
  FiniteGroupTable t = c.star ? enumerate_Gstar(params, p) : enumerate_G(params, p);
  auto inv = abelian_invariants(t);
  Out out(c.output);
  if (c.format == "json") {
    Json j;
    j["instance"] = {{"P", params.P.get_str()}, {"Q", params.Q.get_str()}, {"p", p}};
    j["group"] = c.star ? "gstar_fp" : "g_fp";
    j["order"] = t.order();
    j["invariants"] = inv;
    Json els = Json::array();
    for (auto& e : t.elements()) els.push_back(Json::array({e.w1, e.w0}));
    j["elements"] = els;
    out.s() << j.dump() << '\n';
  } else {
    out.s() << (c.star ? "G*_F" : "G_F") << p << "(f): order " << t.order() << ", invariants " << fmt_list(inv) << '\n';
    out.s() << "elements:";
    for (auto& e : t.elements()) out.s() << ' ' << fmt_point(e);
    out.s() << '\n';
  }
  out.finish();
  return kOk;
}

void print_structure_text(std::ostream& o, const RecurrenceParams& params, const StructureReport& r) {
  const Prediction& pr = r.predicted;
  o << "P=" << params.P << " Q=" << params.Q << " p=" << r.p << "  D=" << params.D << " (" << to_string(r.splitting)
    << ", s=" << r.s << ", d0=" << r.d0 << ")\n";
  o << "r(p)=" << r.r << "  |G_Fp|=" << r.g_order << " " << fmt_list(r.g_invariants) << "  |G*_Fp|=" << r.gstar_order
    << " " << fmt_list(r.gstar_invariants) << '\n';
  o << "case " << pr.case_label << (pr.in_range ? "" : " (" + pr.exclusion + ")") << '\n';
  o << "  K*/G*   predicted " << pr.kstar_gstar.str() << "   computed " << r.computed.kstar_gstar.str() << '\n';
  o << "  G/K     predicted ";
  if (pr.g_over_k) {
    o << pr.g_over_k->str();
  } else if (!pr.g_over_k_alternatives.empty()) {
    for (std::size_t i = 0; i < pr.g_over_k_alternatives.size(); ++i)
      o << (i ? " or " : "") << pr.g_over_k_alternatives[i].str();
  } else {
    o << "free rank " << pr.free_rank;
  }
  o << "   computed " << r.computed.g_over_k.str() << (r.computed.branch.empty() ? "" : " (" + r.computed.branch + ")")
    << '\n';
  auto b = [](const std::optional<bool>& x) { return x ? (*x ? "yes" : "no") : "-"; };
  o << "  H = K   predicted " << b(pr.h_equals_k) << "   computed " << (r.computed.h_equals_k ? "yes" : "no") << '\n';
  o << "  G = H   predicted " << b(pr.g_equals_h) << "   computed " << (r.computed.g_equals_h ? "yes" : "no") << '\n';
  if (!r.computed.unit_quotient.empty())
    o << "  unit quotient " << fmt_list(r.computed.unit_quotient) << '\n';
  for (auto& ch : r.checks)
    o << "  [" << (ch.pass ? "pass" : "FAIL") << "] " << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << '\n';
  o << "verdict " << to_string(r.verdict) << '\n';
}

int cmd_structure(const Common& c) {
  RecurrenceParams params = params_of(c);
  std::uint64_t p = parse_prime(c.p);
  StructureReport r = crosscheck_structure(params, p, c.samples);
  Out out(c.output);
  if (c.format == "json")
    out.s() << record_json(params, r, std::nullopt).dump() << '\n';
  else
    print_structure_text(out.s(), params, r);
  out.finish();
  return r.verdict == Verdict::Mismatch ? kMismatch : kOk;
}

std::pair<long, long> parse_range(const std::string& s, const std::string& what) {
  auto colon = s.find(':', 1);
  if (colon == std::string::npos) {
    long v = to_i64(parse_int(s, what));
    return {v, v};
  }
  long lo = to_i64(parse_int(s.substr(0, colon), what));
  long hi = to_i64(parse_int(s.substr(colon + 1), what));
  if (lo > hi) throw Error(ErrorKind::InvalidInput, what + " range is empty");
  return {lo, hi};
}

int run_records(const Common& c, const SweepConfig& cfg) {
  auto instances = enumerate_instances(cfg);
  Out out(c.output);
  std::cerr << instances.size() << " instances\n";
  bool csv = c.format == "csv";
  bool timing = !c.no_timing;
  if (csv) out.s() << csv_header(timing) << '\n';
  std::size_t n_match = 0, n_out = 0, n_mis = 0, n_err = 0;
  run_sweep(instances, cfg.radius, c.jobs, [&](const SweepRecord& rec) {
    const auto& in = rec.instance;
    std::optional<double> ms = timing ? std::optional<double>(rec.ms) : std::nullopt;
    if (rec.report) {
      RecurrenceParams params(in.P, in.Q);
      switch (rec.report->verdict) {
        case Verdict::Match: ++n_match; break;
        case Verdict::OutOfRange: ++n_out; break;
        case Verdict::Mismatch: ++n_mis; break;
      }
      if (csv)
        out.s() << csv_row(params, *rec.report, ms) << '\n';
      else
        out.s() << record_json(params, *rec.report, ms).dump() << '\n';
    } else {
      ++n_err;
      if (csv)
        out.s() << csv_error_row(in.P, in.Q, in.p, rec.error, timing) << '\n';
      else
        out.s() << error_json(in.P, in.Q, in.p, rec.error).dump() << '\n';
    }
  });
  out.finish();
  std::cerr << "match " << n_match << ", out-of-formula-range " << n_out << ", mismatch " << n_mis << ", error " << n_err
            << '\n';
  return n_mis + n_err ? kMismatch : kOk;
}

int cmd_verify(const Common& c) {
  SweepConfig cfg;
  cfg.radius = c.samples;
  cfg.primes = primes_of(c);
  if (c.pq_box >= 0) {
    cfg.P_min = cfg.Q_min = -c.pq_box;
    cfg.P_max = cfg.Q_max = c.pq_box;
  } else {
    RecurrenceParams params = params_of(c);  // validates D and Q
    cfg.P_min = cfg.P_max = to_i64(params.P);
    cfg.Q_min = cfg.Q_max = to_i64(params.Q);
    if (!c.p.empty() && mod(params.Q, Int(c.p)) == 0) throw Error(ErrorKind::InvalidInput, "Q not a unit mod p");
  }
  return run_records(c, cfg);
}

int cmd_sweep(const Common& c) {
  if (c.P_range.empty() || c.Q_range.empty()) throw Error(ErrorKind::InvalidInput, "sweep needs --P-range and --Q-range");
  SweepConfig cfg;
  cfg.radius = c.samples;
  cfg.primes = primes_of(c);
  std::tie(cfg.P_min, cfg.P_max) = parse_range(c.P_range, "--P-range");
  std::tie(cfg.Q_min, cfg.Q_max) = parse_range(c.Q_range, "--Q-range");
  cfg.irreducible_only = c.irreducible_only;
  return run_records(c, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laxton groups of second-order recurrences: exact arithmetic, finite structure, classification"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Common c;
  c.jobs = default_jobs();

  auto add_pq = [&](CLI::App* sub) {
    sub->add_option("-P", c.P, "coefficient P of t^2 - P t + Q")->capture_default_str();
    sub->add_option("-Q", c.Q, "coefficient Q")->capture_default_str();
  };
  auto add_fmt = [&](CLI::App* sub, std::vector<std::string> allowed, const std::string& def) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(allowed))->default_str(def);
    sub->add_option("--output", c.output, "write to this file instead of stdout");
  };

  auto* rank_cmd = app.add_subcommand("rank", "rank of apparition r(p)");
  add_pq(rank_cmd);
  rank_cmd->add_option("-p", c.p, "prime");
  rank_cmd->add_option("--prime-bound", c.prime_bound, "all primes below N");
  rank_cmd->add_flag("--check", c.check, "compare with the order of [0,1] and check r(p) | p - (D/p)");
  add_fmt(rank_cmd, {"text", "json"}, "text");

  std::string law_op;
  auto* law_cmd = app.add_subcommand("law", "group law on class vectors: mul a b | inv a | act a --nu n");
  law_cmd->add_option("op", law_op, "mul, inv or act")->required()->check(CLI::IsMember({"mul", "inv", "act"}));
  law_cmd->add_option("operands", c.operands, "w1,w0 (rationals allowed, e.g. 1/2,3)")->required();
  add_pq(law_cmd);
  law_cmd->add_option("--ring", c.ring, "Q, Zp:p or Fp:p")->capture_default_str();
  law_cmd->add_flag("--differential", c.differential, "also run the Laxton product formulas and compare");
  law_cmd->add_option("--nu", c.nu, "shift for act")->capture_default_str();
  add_fmt(law_cmd, {"text", "json"}, "text");

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a rational class mod p");
  reduce_cmd->add_option("class", c.operands, "w1,w0")->required()->expected(1);
  add_pq(reduce_cmd);
  reduce_cmd->add_option("-p", c.p, "prime")->required();
  add_fmt(reduce_cmd, {"text", "json"}, "text");

  auto* classify_cmd = app.add_subcommand("classify", "membership of a class in K(f,p), G(f,p), H(f,p)");
  classify_cmd->add_option("class", c.operands, "w1,w0")->required()->expected(1);
  add_pq(classify_cmd);
  classify_cmd->add_option("-p", c.p, "prime")->required();
  add_fmt(classify_cmd, {"text", "json"}, "text");

  auto* fg_cmd = app.add_subcommand("finite-group", "enumerate G_Fp(f) or G*_Fp(f)");
  add_pq(fg_cmd);
  fg_cmd->add_option("-p", c.p, "prime")->required();
  fg_cmd->add_flag("--star", c.star, "quotient by the subgroup generated by [0,1]");
  add_fmt(fg_cmd, {"text", "json"}, "text");

  auto* st_cmd = app.add_subcommand("structure", "predicted and computed quotient structure for one instance");
  add_pq(st_cmd);
  st_cmd->add_option("-p", c.p, "prime")->required();
  st_cmd->add_option("--samples", c.samples, "sample grid radius")->capture_default_str();
  add_fmt(st_cmd, {"text", "json"}, "text");

  auto add_run_opts = [&](CLI::App* sub) {
    sub->add_option("-p", c.p, "single prime");
    sub->add_option("--prime-bound", c.prime_bound, "all primes below N");
    sub->add_option("--jobs", c.jobs, "worker threads (default $LAXTON_JOBS or hardware)");
    sub->add_flag("--no-timing", c.no_timing, "omit timing_ms so output is byte-stable");
    sub->add_option("--samples", c.samples, "sample grid radius")->capture_default_str();
    add_fmt(sub, {"json", "csv"}, "json");
  };

  auto* verify_cmd = app.add_subcommand("verify", "cross-check the structure predictions; exit 1 on any mismatch");
  add_pq(verify_cmd);
  verify_cmd->add_option("--pq-box", c.pq_box, "all |P|, |Q| <= B instead of -P/-Q");
  add_run_opts(verify_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "verify over arbitrary P and Q ranges");
  sweep_cmd->add_option("--P-range", c.P_range, "lo:hi")->required();
  sweep_cmd->add_option("--Q-range", c.Q_range, "lo:hi")->required();
  sweep_cmd->add_flag("--irreducible-only", c.irreducible_only, "skip f reducible over Q");
  add_run_opts(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (c.format.empty()) c.format = (verify_cmd->parsed() || sweep_cmd->parsed()) ? "json" : "text";
  if (c.jobs < 1) c.jobs = 1;

  try {
    if (rank_cmd->parsed()) return cmd_rank(c);
    if (law_cmd->parsed()) return cmd_law(law_op, c);
    if (reduce_cmd->parsed()) return cmd_reduce(c);
    if (classify_cmd->parsed()) return cmd_classify(c);
    if (fg_cmd->parsed()) return cmd_finite_group(c);
    if (st_cmd->parsed()) return cmd_structure(c);
    if (verify_cmd->parsed()) return cmd_verify(c);
    if (sweep_cmd->parsed()) return cmd_sweep(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

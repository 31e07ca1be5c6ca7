#include "hotab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace hotab {

namespace {

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

const char* route_name(const FragmentReport& r) {
  if (r.lambda_free.holds) return "lambda-free";
  if (r.pure.holds) return "pure";
  return "BSR";
}

std::string flag_line(const char* name, const FlagReport& f, const Branch& a) {
  std::string s = std::string(name) + ": " + (f.holds ? "yes" : "no");
  if (!f.holds && f.formula) {
    s += " (formula " + std::to_string(*f.formula + 1) + " " + print_term(a.formulas()[*f.formula]) + ": " + f.reason;
    if (f.witness) s += ": " + print_term(*f.witness);
    s += ")";
  }
  return s;
}

}  // namespace

std::string render_fragment_report(const FragmentReport& r, const Branch& a) {
  std::string s;
  s += flag_line("efo", r.efo, a) + "\n";
  s += flag_line("quasi-efo", r.quasi_efo, a) + "\n";
  s += flag_line("lambda-free", r.lambda_free, a) + "\n";
  s += flag_line("pure", r.pure, a) + "\n";
  s += flag_line("bsr", r.bsr, a) + "\n";
  s += std::string("decidable: ") + (r.decidable() ? "yes" : "no") + "\n";
  return s;
}

int run(const Problem& p, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  for (std::size_t i : p.normalized)
    err << "note: assumption " << (i + 1) << " normalized to " << print_term(p.assumptions[i]) << "\n";
  Branch a = p.branch();
  FragmentReport rep = classify_branch(a);
  if (opts.fragment_check) {
    out << render_fragment_report(rep, a);
    return kExitOk;
  }

  std::string mode = opts.mode ? *opts.mode : p.mode.value_or("auto");
  SearchConfig cfg;
  cfg.max_nodes = opts.max_nodes;
  if (opts.timeout_seconds)
    cfg.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*opts.timeout_seconds * 1000.0));
  else
    cfg.timeout.reset();
  cfg.fuel_schedule = opts.fuel_schedule;
  cfg.eager_close = opts.eager_close;
  cfg.max_domain = opts.max_domain;

  Verdict v;
  try {
    if (mode == "auto" && rep.decidable()) {
      err << "route: decide (" << route_name(rep) << ")\n";
      DecideOptions d;
      d.max_domain = opts.max_domain;
      v = decide(a, d);
    } else if (mode == "efo" || (mode == "auto" && rep.quasi_efo.holds)) {
      if (!rep.quasi_efo.holds) {
        err << "error: --mode efo needs quasi-EFO input; " << flag_line("quasi-efo", rep.quasi_efo, a) << "\n";
        return kExitInput;
      }
      err << "route: efo search\n";
      cfg.calculus = Calculus::EFO;
      v = refute(a, cfg);
    } else if (mode == "stt" || mode == "auto") {
      err << "route: stt search\n";
      cfg.calculus = Calculus::STT;
      v = refute(a, cfg);
    } else {
      err << "error: unknown mode '" << mode << "'\n";
      return kExitInput;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  out << to_string(v.kind) << "\n";
  switch (v.kind) {
    case VerdictKind::Refuted: {
      const Proof& proof = *v.proof;
      out << "proof: " << proof.node_count() << " nodes\n";
      if (opts.proof_out && !write_file(*opts.proof_out, serialize_proof(p, proof), err)) return kExitInternal;
      return kExitUnsat;
    }
    case VerdictKind::Satisfiable: {
      std::string m = print_model(*v.model);
      out << m;
      if (opts.model_out && !write_file(*opts.model_out, m, err)) return kExitInternal;
      return kExitSat;
    }
    case VerdictKind::Unknown:
      out << "reason: " << v.reason << "\n";
      return kExitUnknown;
  }
  return kExitInternal;
}

int run_text(std::string_view text, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  Problem p;
  try {
    p = parse_problem(text);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return run(p, opts, out, err);
}

int check_proof_file(std::string_view proof_text, const std::optional<Problem>& problem, std::ostream& out,
                     std::ostream& err) {
  ProofFile f;
  try {
    f = parse_proof(proof_text);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  if (problem && !(problem->branch().formulas().size() == f.proof.root.size() &&
                   std::all_of(problem->assumptions.begin(), problem->assumptions.end(),
                               [&](const Term& s) { return f.proof.root.contains(s); }))) {
    err << "proof rejected: its root branch differs from the problem\n";
    return kExitInternal;
  }
  std::string why = explain_proof(f.proof);
  if (!why.empty()) {
    err << "proof rejected: " << why << "\n";
    return kExitInternal;
  }
  out << "proof ok: " << f.proof.node_count() << " nodes\n";
  return kExitUnsat;
}

}  // namespace hotab

// frcert command-line frontend.
//
// Exit codes: 0 success, 2 configuration error, 3 verification rejected,
// 4 I/O or parse error. Reports are JSON lines on stdout, or on stderr when
// stdout carries the produced document.

#include "frcert/facial_reduction.hpp"
#include "frcert/generator.hpp"
#include "frcert/native_io.hpp"
#include "frcert/ramana.hpp"
#include "frcert/sdpa.hpp"
#include "frcert/suite.hpp"
#include "frcert/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace frcert;

namespace {

enum Exit { kOk = 0, kConfig = 2, kRejected = 3, kIo = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool to_stdout(const std::string& out) { return out.empty() || out == "-"; }

std::string read_input(const std::string& path) {
  if (path.empty()) throw ConfigError("--in is required");
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

// Writes the document to --out or stdout; returns where the report goes.
std::ostream& emit(const std::string& out, const std::string& text) {
  if (to_stdout(out)) {
    std::cout << text << std::flush;
    return std::cerr;
  }
  write_file(out, text);
  return std::cout;
}

void report(std::ostream& os, const json& j) { os << j.dump() << "\n" << std::flush; }

json verdict_json(const Verdict& v) {
  json t = json::array();
  for (const auto& c : v.transcript) t.push_back({{"check", c.name}, {"passed", c.passed}, {"residual", c.residual}});
  return {{"status", v.proven() ? "proven" : "rejected"}, {"reason", v.reason}, {"flags", v.flags}, {"transcript", t}};
}

json matrix_json(const RatMatrix& a) {
  json rows = json::array();
  for (Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < a.cols(); ++c) row.push_back(to_string(a(r, c)));
    rows.push_back(row);
  }
  return rows;
}

BlockSizes parse_sizes(const std::string& text, const char* flag) {
  BlockSizes out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": malformed size list '" + text + "'");
    }
  }
  return out;
}

struct GenOptions {
  std::string preset;
  std::optional<Index> n, m, k, ell;
  std::string p, q;
  std::optional<long> range;
  std::uint64_t seed = 1;
  bool mess = false;
};

GenParams build_params(const GenOptions& o) {
  GenParams g = o.preset.empty() ? GenParams{} : GenParams::preset(o.preset);
  if (o.n) g.n = *o.n;
  if (o.m) g.m = *o.m;
  if (o.k) g.k = *o.k;
  if (o.ell) g.ell = *o.ell;
  if (!o.p.empty()) g.p = parse_sizes(o.p, "--p");
  if (!o.q.empty()) g.q = parse_sizes(o.q, "--q");
  if (o.range) g.range = *o.range;
  g.seed = o.seed;
  g.mess = o.mess;
  return g;
}

void add_gen_options(CLI::App* cmd, GenOptions& o, bool weak) {
  cmd->add_option("--preset", o.preset, "Named parameter set (paper-m10, paper-m20)");
  cmd->add_option("--n", o.n, "Matrix order");
  cmd->add_option("--m", o.m, "Number of constraints");
  cmd->add_option("--k", o.k, "Length of the staircase minus one");
  cmd->add_option("--p", o.p, "Staircase block sizes, comma separated");
  if (weak) {
    cmd->add_option("--l", o.ell, "Length of the reversed staircase minus one");
    cmd->add_option("--q", o.q, "Reversed staircase block sizes, comma separated");
  }
  cmd->add_option("--range", o.range, "Free entries are drawn from [-range, range]");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_flag("--mess", o.mess, "Apply random row operations and a congruence");
}

struct Output {
  std::string out;
  std::string format = "native";
  bool no_cert = false;
};

// Native: one document with the certificates. SDPA: the instance file plus
// a native sidecar <stem>.cert carrying the certificates.
void write_instance(const Output& o, const DualInstance& inst, const CertificateBundle& bundle, json& rep) {
  NativeDocument doc;
  doc.instance = inst;
  if (!o.no_cert) doc.bundle = bundle;
  if (o.format == "native") {
    std::ostream& os = emit(o.out, write_native(doc));
    rep["out"] = to_stdout(o.out) ? "-" : o.out;
    report(os, rep);
    return;
  }
  std::ostream& os = emit(o.out, write_sdpa(export_sdpa(inst)));
  rep["out"] = to_stdout(o.out) ? "-" : o.out;
  if (!o.no_cert && !to_stdout(o.out)) {
    std::filesystem::path cert = std::filesystem::path(o.out).replace_extension(".cert");
    write_file(cert, write_native(doc));
    rep["certificate"] = cert.string();
  }
  report(os, rep);
}

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "Output path ('-' or omitted: stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"native", "sdpa"}));
  cmd->add_flag("--no-cert", o.no_cert, "Do not emit certificates");
}

// Reads a native document, or an SDPA instance with an optional native
// certificate sidecar.
NativeDocument load_document(const std::string& in, const std::string& format, const std::string& cert) {
  const std::string text = read_input(in);
  if (format == "sdpa") {
    NativeDocument doc;
    doc.instance = import_sdpa(text);
    if (!cert.empty()) doc.bundle = read_native(read_input(cert)).bundle;
    return doc;
  }
  NativeDocument doc = read_native(text);
  if (!cert.empty()) doc.bundle = read_native(read_input(cert)).bundle;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, transform and verify infeasible conic systems with exact certificates"};
  app.require_subcommand(1);

  GenOptions gi, gw;
  Output oi, ow, om, oimp;
  auto* c_inf = app.add_subcommand("generate-infeasible", "Staircase-form infeasible instance");
  add_gen_options(c_inf, gi, false);
  add_output_options(c_inf, oi);
  auto* c_weak = app.add_subcommand("generate-weak", "Weakly infeasible instance with both certificates");
  add_gen_options(c_weak, gw, true);
  add_output_options(c_weak, ow);

  std::string mess_in;
  std::uint64_t mess_seed = 1;
  long mess_range = 2;
  auto* c_mess = app.add_subcommand("mess", "Apply random row operations and a congruence to a native document");
  c_mess->add_option("--in", mess_in, "Input native document ('-' for stdin)");
  c_mess->add_option("--seed", mess_seed, "Random seed");
  c_mess->add_option("--range", mess_range, "Entries of the random matrices lie in [-range, range]");
  add_output_options(c_mess, om);

  std::string ver_in, ver_format = "native", ver_cert;
  VerifyOptions ver_opts;
  auto* c_ver = app.add_subcommand("verify", "Check every certificate carried by a document");
  c_ver->add_option("--in", ver_in, "Input document ('-' for stdin)");
  c_ver->add_option("--format", ver_format, "Input format")->check(CLI::IsMember({"native", "sdpa"}));
  c_ver->add_option("--cert", ver_cert, "Native file supplying the certificates");
  c_ver->add_option("--tolerance", ver_opts.tolerance, "Eigenvalue threshold of rotation checks");

  std::string red_in, red_out;
  auto* c_red = app.add_subcommand("reduce", "Facial reduction of a polyhedral dual system");
  c_red->add_option("--in", red_in, "Input native document");
  c_red->add_option("--out", red_out, "Write the strictly feasible reformulation here");

  std::string ram_in, ram_out;
  std::optional<Index> ram_k;
  auto* c_ram = app.add_subcommand("ramana-dual", "Extended dual of a primal PSD system as an SDPA file");
  c_ram->add_option("--in", ram_in, "Input native primal document with an objective");
  c_ram->add_option("--k", ram_k, "Sequence length minus one (default n-1)");
  c_ram->add_option("--out", ram_out, "Output SDPA path ('-' or omitted: stdout)");

  std::string suite_out;
  Index suite_count = 100;
  std::uint64_t suite_seed = 1;
  auto* c_suite = app.add_subcommand("suite", "Benchmark suite: eight categories with certificates and a manifest");
  c_suite->add_option("--out", suite_out, "Output directory")->required();
  c_suite->add_option("--count", suite_count, "Instances per category");
  c_suite->add_option("--seed", suite_seed, "Master seed");

  std::string exp_in;
  Output oexp;
  oexp.format = "sdpa";
  auto* c_exp = app.add_subcommand("export", "Native document to SDPA (certificates go to a .cert sidecar)");
  c_exp->add_option("--in", exp_in, "Input native document");
  c_exp->add_option("--out", oexp.out, "Output SDPA path ('-' or omitted: stdout)");
  c_exp->add_flag("--no-cert", oexp.no_cert, "Do not write the certificate sidecar");

  std::string imp_in, imp_cert;
  auto* c_imp = app.add_subcommand("import", "SDPA file to a native document");
  c_imp->add_option("--in", imp_in, "Input SDPA file");
  c_imp->add_option("--cert", imp_cert, "Native file supplying the certificates");
  c_imp->add_option("--out", oimp.out, "Output native path ('-' or omitted: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (c_inf->parsed() || c_weak->parsed()) {
      const bool weak = c_weak->parsed();
      GenParams params = build_params(weak ? gw : gi);
      Generated g = weak ? gen_weak(params) : gen_infeasible(params);
      json rep = {{"command", weak ? "generate-weak" : "generate-infeasible"},
                  {"seed", params.seed},
                  {"n", params.n},
                  {"m", params.m},
                  {"label", g.bundle.label},
                  {"messed", params.mess}};
      write_instance(weak ? ow : oi, g.instance, g.bundle, rep);
      return kOk;
    }
    if (c_mess->parsed()) {
      NativeDocument doc = read_native(read_input(mess_in));
      if (!doc.is_dual()) throw ConfigError("mess needs a dual document");
      Generated g{doc.dual(), doc.bundle};
      Generated h = mess(g, mess_seed, mess_range);
      json rep = {{"command", "mess"}, {"seed", mess_seed}, {"label", h.bundle.label}};
      write_instance(om, h.instance, h.bundle, rep);
      return kOk;
    }
    if (c_ver->parsed()) {
      NativeDocument doc = load_document(ver_in, ver_format, ver_cert);
      Verdict v = doc.is_dual() ? verify_bundle(doc.dual(), doc.bundle, ver_opts)
                                : verify_bundle(doc.primal(), doc.bundle, ver_opts);
      json rep = {{"command", "verify"}, {"problem", doc.is_dual() ? "dual" : "primal"}, {"label", doc.bundle.label}};
      rep["verdict"] = verdict_json(v);
      report(std::cout, rep);
      return v.proven() ? kOk : kRejected;
    }
    if (c_red->parsed()) {
      NativeDocument doc = read_native(read_input(red_in));
      if (!doc.is_dual()) throw ConfigError("reduce needs a dual document");
      ReductionResult r = facial_reduce_polyhedral(doc.dual());
      StrictReformulation s = strictly_feasible_reformulation(r, doc.dual());
      json seq = json::array();
      for (const auto& z : r.fr_sequence) seq.push_back(matrix_json(z.transpose()));
      json ri = json::array();
      for (Index j = 0; j < s.relative_interior.size(); ++j) ri.push_back(to_string(s.relative_interior(j)));
      json rep = {{"command", "reduce"},         {"steps", r.steps},           {"step_bound", r.step_bound},
                  {"minimal_face", r.minimal_face.support}, {"fr_sequence", seq}, {"relative_interior", ri},
                  {"zero_rhs_constraints", s.k}};
      if (!red_out.empty()) {
        NativeDocument out;
        out.instance = s.reformulated;
        write_file(red_out, write_native(out));
        rep["out"] = red_out;
      }
      report(std::cout, rep);
      return kOk;
    }
    if (c_ram->parsed()) {
      NativeDocument doc = read_native(read_input(ram_in));
      if (doc.is_dual()) throw ConfigError("ramana-dual needs a primal document");
      const PrimalInstance& p = doc.primal();
      if (!p.cone.is_single_psd()) throw ConfigError("ramana-dual needs a single PSD block");
      Index k = ram_k ? *ram_k : p.cone.blocks[0].dim - 1;
      RamanaDualSDP d = build_ramana_dual(p, k);
      std::ostream& os = emit(ram_out, write_sdpa(d.sdp));
      report(os, {{"command", "ramana-dual"},
                  {"n", d.n},
                  {"m", d.m},
                  {"k", d.k},
                  {"variables", d.num_vars()},
                  {"equalities", d.num_equalities()},
                  {"blocks", d.sdp.block_sizes},
                  {"out", to_stdout(ram_out) ? "-" : ram_out}});
      return kOk;
    }
    if (c_suite->parsed()) {
      if (suite_count < 0) throw ConfigError("--count must be nonnegative");
      SuiteManifest man = run_suite(suite_out, suite_count, suite_seed);
      for (const auto& e : man.entries)
        report(std::cout, {{"command", "suite"},
                           {"stem", e.stem},
                           {"category", e.category},
                           {"seed", e.seed},
                           {"verified", e.verified},
                           {"reimport_verified", e.reimport_verified},
                           {"failure", e.failure}});
      report(std::cout, {{"command", "suite"},
                         {"summary", true},
                         {"instances", man.entries.size()},
                         {"all_verified", man.all_verified()},
                         {"manifest", (std::filesystem::path(suite_out) / "manifest.json").string()}});
      return man.all_verified() ? kOk : kRejected;
    }
    if (c_exp->parsed()) {
      NativeDocument doc = read_native(read_input(exp_in));
      if (!doc.is_dual()) throw ConfigError("export needs a dual document");
      json rep = {{"command", "export"}, {"m", doc.dual().m()}};
      write_instance(oexp, doc.dual(), doc.bundle, rep);
      return kOk;
    }
    if (c_imp->parsed()) {
      NativeDocument doc = load_document(imp_in, "sdpa", imp_cert);
      std::ostream& os = emit(oimp.out, write_native(doc));
      report(os, {{"command", "import"}, {"m", doc.dual().m()}, {"out", to_stdout(oimp.out) ? "-" : oimp.out}});
      return kOk;
    }
  } catch (const ConfigError& e) {
    report(std::cerr, {{"error", "config"}, {"message", e.what()}});
    return kConfig;
  } catch (const ParamError& e) {
    report(std::cerr, {{"error", "config"}, {"message", e.what()}});
    return kConfig;
  } catch (const std::out_of_range& e) {
    report(std::cerr, {{"error", "config"}, {"message", e.what()}});
    return kConfig;
  } catch (const ParseError& e) {
    report(std::cerr, {{"error", "parse"}, {"line", e.line()}, {"column", e.column()}, {"message", e.what()}});
    return kIo;
  } catch (const SdpaFormatError& e) {
    report(std::cerr, {{"error", "parse"}, {"message", e.what()}});
    return kIo;
  } catch (const IoError& e) {
    report(std::cerr, {{"error", "io"}, {"message", e.what()}});
    return kIo;
  } catch (const InfeasibleInputError& e) {
    report(std::cerr, {{"error", "rejected"}, {"message", e.what()}});
    return kRejected;
  } catch (const std::exception& e) {
    report(std::cerr, {{"error", "config"}, {"message", e.what()}});
    return kConfig;
  }
  return kConfig;
}

// residue-atlas: command-line front end. Every report is one JSON document;
// exit code 0 on success, 2 when the verdict is Undecided, 1 on error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "residue_atlas/builders.hpp"
#include "residue_atlas/classifier.hpp"
#include "residue_atlas/cylinders.hpp"
#include "residue_atlas/oracle.hpp"
#include "residue_atlas/version.hpp"

using namespace residue_atlas;

namespace {

struct Options {
  std::string input, output, svg;
  bool emit_certificate = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  double tol = 1e-9;
  int starts = 200;
  int s1 = 0, s2 = 0;
};

// --input is a path, "-" for stdin, or inline JSON.
json load_input(const std::string& in) {
  if (in.empty()) throw parse_error("missing --input");
  auto first = in.find_first_not_of(" \t\n");
  try {
    if (in == "-") return json::parse(std::cin);
    if (first != std::string::npos && (in[first] == '{' || in[first] == '[')) return json::parse(in);
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  return read_json_file(in);
}

Stratum stratum_of(const json& j) {
  if (!j.contains("stratum")) throw parse_error("input needs a stratum");
  return parse_stratum(j.at("stratum"));
}

ResidueTuple tuple_of(const json& j, const char* key = "residues") {
  if (!j.contains(key)) throw parse_error(std::string("input needs ") + key);
  return parse_tuple(j.at(key));
}

json base_report(const std::string& cmd) { return {{"command", cmd}, {"version", version}}; }

json decision_report(const std::string& cmd, const Decision& d, bool certificate) {
  json j = base_report(cmd);
  j["verdict"] = to_string(d.verdict);
  j["tag"] = d.tag;
  if (certificate) j["certificate"] = d.certificate;
  return j;
}

int exit_for(const Decision& d) { return d.verdict == Verdict::Undecided ? 2 : 0; }

int run(const std::string& cmd, const Options& o, json& out) {
  if (cmd == "decide") {
    auto in = load_input(o.input);
    auto s = stratum_of(in);
    auto d = classify(s, tuple_of(in));
    out = decision_report(cmd, d, o.emit_certificate);
    out["stratum"] = stratum_to_json(s);
    return exit_for(d);
  }
  if (cmd == "witness") {
    auto in = load_input(o.input);
    auto s = stratum_of(in);
    auto r = tuple_of(in);
    auto d = classify(s, r);
    out = decision_report(cmd, d, o.emit_certificate);
    out["stratum"] = in.at("stratum");
    out["residues"] = tuple_to_json(r);
    out["surface"] = nullptr;
    if (d.verdict != Verdict::Realizable) {
      out["reason"] = "no witness for a tuple that is not known to be realizable";
      return exit_for(d);
    }
    auto w = find_witness(s, r);
    if (!w.surface) {
      out["reason"] = w.reason;
      return 0;
    }
    out["construction"] = w.construction;
    out["surface"] = surface_to_json(*w.surface);
    out["verification"] = verify_surface(*w.surface, s, r).to_json();
    if (!o.svg.empty()) {
      std::ofstream f(o.svg);
      if (!f) throw std::runtime_error("cannot write " + o.svg);
      f << surface_svg(*w.surface);
    }
    return 0;
  }
  if (cmd == "enumerate-forbidden") {
    auto t = enumerate_forbidden(o.s1, o.s2, o.jobs);
    out = base_report(cmd);
    out["s1"] = o.s1;
    out["s2"] = o.s2;
    out["bound"] = forbidden_bound(o.s1, o.s2);
    out["tag"] = "prop:finitude";
    out["forbidden"] = t;
    return 0;
  }
  if (cmd == "verify-surface") {
    auto in = load_input(o.input);
    if (!in.contains("surface") || in.at("surface").is_null()) throw parse_error("input needs a surface");
    auto S = surface_from_json(in.at("surface"));
    auto rep = verify_surface(S, stratum_of(in), tuple_of(in));
    out = base_report(cmd);
    out["report"] = rep.to_json();
    out["ok"] = rep.ok;
    return 0;
  }
  if (cmd == "oracle-fit") {
    auto in = load_input(o.input);
    FitOptions fo;
    fo.seed = o.seed;
    fo.tol = o.tol;
    fo.n_starts = o.starts;
    fo.jobs = o.jobs;
    auto rep = fit(stratum_of(in), tuple_of(in), fo);
    out = base_report(cmd);
    out.update(rep.to_json());
    return 0;
  }
  if (cmd == "triangular") {
    auto in = load_input(o.input);
    auto r = in.is_array() ? parse_tuple(in) : tuple_of(in);
    if (r.size() != 3) throw parse_error("triangular takes three residues");
    out = base_report(cmd);
    out["triangular"] = is_triangular(r[0], r[1], r[2]);
    out["tag"] = "def:triangulaire";
    return 0;
  }
  if (cmd == "cylinders") {
    auto in = load_input(o.input);
    auto d = decide_cylinders(stratum_of(in), tuple_of(in, "circumferences"));
    out = decision_report(cmd, d, o.emit_certificate);
    return exit_for(d);
  }
  throw std::invalid_argument("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residues of k-differentials: decisions, flat-surface witnesses and a numerical oracle"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);
  Options o;
  auto with_io = [&](CLI::App* sc) {
    sc->add_option("--input", o.input, "JSON file, '-' for stdin, or inline JSON")->required();
    sc->add_option("--output", o.output, "write the report here instead of stdout");
  };
  auto* decide = app.add_subcommand("decide", "classify a residue tuple");
  with_io(decide);
  decide->add_flag("--emit-certificate", o.emit_certificate, "include the certificate");
  auto* witness = app.add_subcommand("witness", "build a flat surface realizing the tuple");
  with_io(witness);
  witness->add_flag("--emit-certificate", o.emit_certificate, "include the certificate");
  witness->add_option("--svg", o.svg, "write the net as SVG");
  auto* enumerate = app.add_subcommand("enumerate-forbidden", "forbidden collinear tuples for s1 positive, s2 negative residues");
  enumerate->add_option("s1", o.s1)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("s2", o.s2)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--output", o.output, "write the report here instead of stdout");
  auto* verify = app.add_subcommand("verify-surface", "check a surface against a stratum and tuple");
  with_io(verify);
  auto* ofit = app.add_subcommand("oracle-fit", "numerical search on the sphere");
  with_io(ofit);
  ofit->add_option("--seed", o.seed, "start sequence seed");
  ofit->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
  ofit->add_option("--starts", o.starts, "number of starts")->check(CLI::PositiveNumber);
  ofit->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  auto* tri = app.add_subcommand("triangular", "whether three residues are triangular");
  with_io(tri);
  auto* cyl = app.add_subcommand("cylinders", "cylinders with prescribed circumferences");
  with_io(cyl);
  cyl->add_flag("--emit-certificate", o.emit_certificate, "include the certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << json{{"error", {{"type", "usage"}, {"message", e.what()}}}, {"version", version}}.dump(2) << "\n";
    return 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  json out;
  int code;
  try {
    code = run(cmd, o, out);
  } catch (const parse_error& e) {
    out = {{"error", {{"type", "parse"}, {"message", e.what()}}}, {"command", cmd}, {"version", version}};
    code = 1;
  } catch (const std::exception& e) {
    out = {{"error", {{"type", "invalid"}, {"message", e.what()}}}, {"command", cmd}, {"version", version}};
    code = 1;
  }
  std::string text = out.dump(2) + "\n";
  if (!o.output.empty() && code != 1) {
    std::ofstream f(o.output);
    if (!f) {
      std::cout << json{{"error", {{"type", "io"}, {"message", "cannot write " + o.output}}}}.dump(2) << "\n";
      return 1;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return code;
}

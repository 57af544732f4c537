// Command-line front end: reads matrices from JSON/CSV files, checks the
// closed-form hypotheses, computes Drazin inverses by the selected method,
// cross-checks them, and reports in human or JSON form.
//
// Exit codes: 0 success; 1 input/parse error; 2 numeric failure;
// 3 verification failure; 4 forced method whose hypotheses fail;
// 5 `check` found no applicable representation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "antidrazin/anti_triangular.hpp"
#include "antidrazin/decomp.hpp"
#include "antidrazin/drazin.hpp"
#include "antidrazin/matrix_io.hpp"

namespace {

using namespace antidrazin;
using nlohmann::json;

struct CommonFlags {
  bool json_out = false;
  bool verify = true;
  std::optional<double> tol;       // residual_tol
  std::optional<double> rank_tol;  // rank_rel_tol
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_flag("--json", flags.json_out, "emit a single JSON object on stdout");
  cmd->add_flag("--verify,!--no-verify", flags.verify,
                "check the result against the defining equations (default on)");
  cmd->add_option("--tol", flags.tol, "residual tolerance (default 1e-8 or $ANTIDRAZIN_TOL)");
  cmd->add_option("--rank-tol", flags.rank_tol, "relative rank tolerance (default 1e-10)");
}

ToleranceConfig make_config(const CommonFlags& flags) {
  ToleranceConfig cfg;
  if (const char* env = std::getenv("ANTIDRAZIN_TOL")) {
    try {
      cfg.residual_tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable ANTIDRAZIN_TOL='" << env << "'\n";
    }
  }
  if (flags.tol) cfg.residual_tol = *flags.tol;
  if (flags.rank_tol) cfg.rank_rel_tol = *flags.rank_tol;
  cfg.validate();
  return cfg;
}

std::string fmt_complex(Complex z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.6g", z.real());
  } else {
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  }
  return buf;
}

void print_matrix(std::ostream& os, const std::string& name, const ComplexMatrix& m) {
  os << name << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << (j ? "  " : " ") << fmt_complex(m(i, j));
    }
    os << " ]\n";
  }
}

json residuals_to_json(const GDrazinResiduals& r, double tol) {
  return {{"inner", r.inner},
          {"commute", r.commute},
          {"nilpotency", r.nilpotency},
          {"pass", r.pass},
          {"tolerance", tol}};
}

void print_residuals(std::ostream& os, const GDrazinResiduals& r, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "residuals: inner %.3e, commute %.3e, nilpotency %.3e (tol %.1e) [%s]\n", r.inner,
                r.commute, r.nilpotency, tol, r.pass ? "ok" : "FAIL");
  os << buf;
}

json condition_to_json(const ConditionReport& r) {
  return {{"name", r.condition_name}, {"defect", r.defect_norm}, {"holds", r.holds}};
}

void print_condition(std::ostream& os, const ConditionReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "  %-10s defect %.6e  %s\n", r.condition_name.c_str(),
                r.defect_norm, r.holds ? "holds" : "violated");
  os << buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared error handling so that equal report states always map to equal codes.
int run_guarded(bool json_out, const std::function<int()>& body) {
  auto emit_error = [&](int code, const std::string& what, const json& extra = {}) {
    std::cerr << "error: " << what << "\n";
    if (json_out) {
      json j = extra.is_object() ? extra : json::object();
      j["error"] = what;
      j["exit_code"] = code;
      std::cout << j.dump() << "\n";
    }
    return code;
  };
  try {
    return body();
  } catch (const ParseError& e) {
    return emit_error(1, e.what());
  } catch (const DimensionError& e) {
    return emit_error(1, e.what());
  } catch (const ConditionError& e) {
    json conds = json::array();
    for (const auto& r : e.reports) {
      conds.push_back(condition_to_json(r));
      print_condition(std::cerr, r);
    }
    return emit_error(4, e.what(), json{{"conditions", conds}});
  } catch (const VerificationError& e) {
    return emit_error(3, e.what());
  } catch (const NumericError& e) {
    return emit_error(2, e.what());
  } catch (const std::invalid_argument& e) {
    return emit_error(1, e.what());
  } catch (const std::exception& e) {
    return emit_error(2, e.what());
  }
}

struct PairInput {
  ComplexMatrix e;
  ComplexMatrix f;
  std::string path_e;
  std::string path_f;
};

AntiTriangularInput load_pair(const PairInput& p, const ToleranceConfig& cfg) {
  return AntiTriangularInput(p.e, p.f, cfg);
}

int cmd_drazin(const std::string& path, const CommonFlags& flags) {
  const ToleranceConfig cfg = make_config(flags);
  const ComplexMatrix a = read_matrix_file(path);
  if (!a.square()) throw DimensionError("drazin: input matrix must be square");
  const auto t0 = std::chrono::steady_clock::now();
  const DrazinResult r = drazin_oracle(a, cfg);
  const double wall = seconds_since(t0);
  if (flags.json_out) {
    json j{{"command", "drazin"},
           {"input", {{"path", path}, {"rows", a.rows()}, {"cols", a.cols()},
                      {"frobenius_norm", a.frobenius_norm()}}},
           {"index", r.index},
           {"inverse", matrix_to_json(r.inverse)},
           {"projector", matrix_to_json(r.projector)},
           {"residuals", residuals_to_json(r.residuals, cfg.residual_tol)},
           {"wall_time_s", wall}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "index: " << r.index << "\n";
    print_matrix(std::cout, "inverse", r.inverse);
    print_matrix(std::cout, "projector", r.projector);
    print_residuals(std::cout, r.residuals, cfg.residual_tol);
    std::printf("wall_time: %.3f ms\n", wall * 1e3);
  }
  return 0;
}

// anti / flip / second-order share the report shape; `mode` names the command.
int run_pair_command(const std::string& mode, const PairInput& p, const std::string& method,
                     const CommonFlags& flags) {
  const ToleranceConfig cfg = make_config(flags);
  const AntiTriangularInput in = load_pair(p, cfg);
  const auto c23 = check_t23(in);
  const auto c26 = check_t26(in);
  const bool t23_ok = c23[0].holds && c23[1].holds;
  const bool t26_ok = c26[0].holds && c26[1].holds;

  const auto t0 = std::chrono::steady_clock::now();
  FormulaOptions fopt;
  fopt.verify = false;  // verified once below, under the CLI's own flag

  std::string chosen = method;
  ComplexMatrix target;  // the matrix whose inverse is being computed
  ComplexMatrix result;
  std::optional<BlockQuadruple> blocks;
  std::optional<std::size_t> oracle_index;

  if (mode == "anti") {
    target = assemble_anti_triangular(in.e, in.f);
    if (method == "auto") chosen = t23_ok ? "t23" : (t26_ok ? "t26" : "oracle");
    if (chosen == "oracle" && method == "auto") {
      std::cerr << "warning: neither closed-form hypothesis set holds; "
                   "falling back to the pseudoinverse-based construction\n";
    }
    if (chosen == "t23") {
      if (!t23_ok) {
        throw ConditionError("method t23 was forced but its hypotheses do not hold",
                             {c23.begin(), c23.end()});
      }
      blocks = anti_triangular_drazin_t23(in, fopt);
      result = blocks->assemble();
    } else if (chosen == "t26") {
      if (!t26_ok) {
        throw ConditionError("method t26 was forced but its hypotheses do not hold",
                             {c26.begin(), c26.end()});
      }
      T26Result r = anti_triangular_drazin_t26(in, fopt);
      blocks = std::move(r.blocks);
      result = std::move(r.inverse);
    } else {
      const DrazinResult r = drazin_oracle(target, cfg);
      result = r.inverse;
      oracle_index = r.index;
    }
  } else if (mode == "flip") {
    target = assemble_flipped(in.e, in.f);
    if (!t26_ok) {
      throw ConditionError("flip requires the projected hypotheses Fpi*EF^2 = 0, Fpi*EFE = 0",
                           {c26.begin(), c26.end()});
    }
    chosen = "t26";
    result = anti_triangular_flipped(in, fopt);
  } else {  // second-order
    target = assemble_second_order(in.e, in.f);
    chosen = t23_ok ? "t23" : (t26_ok ? "t26" : "oracle");
    if (chosen == "oracle") {
      std::cerr << "warning: neither closed-form hypothesis set holds; "
                   "falling back to the pseudoinverse-based construction\n";
    }
    result = second_order_transform(in, fopt);
  }

  std::optional<GDrazinResiduals> residuals;
  if (flags.verify) {
    residuals = verify_gdrazin(target, result, cfg);
    if (!residuals->pass) {
      throw VerificationError(mode + ": result fails the defining equations", *residuals);
    }
  }
  const double wall = seconds_since(t0);

  if (flags.json_out) {
    json j{{"command", mode},
           {"input",
            {{"path_e", p.path_e},
             {"path_f", p.path_f},
             {"n", in.n()},
             {"norm_e", in.e.frobenius_norm()},
             {"norm_f", in.f.frobenius_norm()}}},
           {"conditions",
            {{"t23", json::array({condition_to_json(c23[0]), condition_to_json(c23[1])})},
             {"t26", json::array({condition_to_json(c26[0]), condition_to_json(c26[1])})}}},
           {"method", chosen},
           {"result", matrix_to_json(result)},
           {"wall_time_s", wall}};
    if (blocks) {
      j["blocks"] = {{"label", blocks->label},
                     {"b11", matrix_to_json(blocks->b11)},
                     {"b12", matrix_to_json(blocks->b12)},
                     {"b21", matrix_to_json(blocks->b21)},
                     {"b22", matrix_to_json(blocks->b22)}};
    }
    if (oracle_index) j["index"] = *oracle_index;
    if (residuals) j["residuals"] = residuals_to_json(*residuals, cfg.residual_tol);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "conditions:\n";
    for (const auto& r : c23) print_condition(std::cout, r);
    for (const auto& r : c26) print_condition(std::cout, r);
    std::cout << "method: " << chosen << "\n";
    if (oracle_index) std::cout << "index: " << *oracle_index << "\n";
    print_matrix(std::cout, "result", result);
    if (blocks) {
      print_matrix(std::cout, blocks->label + ".b11", blocks->b11);
      print_matrix(std::cout, blocks->label + ".b12", blocks->b12);
      print_matrix(std::cout, blocks->label + ".b21", blocks->b21);
      print_matrix(std::cout, blocks->label + ".b22", blocks->b22);
    }
    if (residuals) print_residuals(std::cout, *residuals, cfg.residual_tol);
    std::printf("wall_time: %.3f ms\n", wall * 1e3);
  }
  return 0;
}

int cmd_check(const PairInput& p, const CommonFlags& flags) {
  const ToleranceConfig cfg = make_config(flags);
  const AntiTriangularInput in = load_pair(p, cfg);
  const auto c23 = check_t23(in);
  const auto c26 = check_t26(in);
  const bool t23_ok = c23[0].holds && c23[1].holds;
  const bool t26_ok = c26[0].holds && c26[1].holds;
  if (flags.json_out) {
    json j{{"command", "check"},
           {"conditions",
            {{"t23", json::array({condition_to_json(c23[0]), condition_to_json(c23[1])})},
             {"t26", json::array({condition_to_json(c26[0]), condition_to_json(c26[1])})}}},
           {"applies", {{"t23", t23_ok}, {"t26", t26_ok}}}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "conditions:\n";
    for (const auto& r : c23) print_condition(std::cout, r);
    for (const auto& r : c26) print_condition(std::cout, r);
    std::cout << "t23 " << (t23_ok ? "applies" : "does not apply") << ", t26 "
              << (t26_ok ? "applies" : "does not apply") << "\n";
  }
  return (t23_ok || t26_ok) ? 0 : 5;
}

int cmd_gen(const std::string& type, const std::string& family, std::size_t n, std::uint64_t seed,
            const std::string& out_e, const std::string& out_f, const CommonFlags& flags) {
  AntiTriangularInput in = [&] {
    if (type == "t23") {
      if (family == "projected") return generate_t23_instance(n, seed, T23Family::kProjectedKernel);
      if (family == "block-pair" || family.empty()) {
        return generate_t23_instance(n, seed, T23Family::kNilpotentBlockPair);
      }
      throw std::invalid_argument("gen: t23 families are 'projected' and 'block-pair'");
    }
    if (type == "t26") {
      if (family == "invertible") return generate_t26_instance(n, seed, T26Family::kInvertibleF);
      if (family == "range-aligned") {
        return generate_t26_instance(n, seed, T26Family::kRangeAligned);
      }
      if (family == "embedded" || family.empty()) {
        return generate_t26_instance(n, seed, T26Family::kEmbeddedT23);
      }
      throw std::invalid_argument("gen: t26 families are 'invertible', 'range-aligned', 'embedded'");
    }
    throw std::invalid_argument("gen: type must be 't23' or 't26'");
  }();

  // Construction guarantees, asserted at generation time.
  const auto reports = (type == "t23") ? check_t23(in) : check_t26(in);
  if (!reports[0].holds || !reports[1].holds) {
    throw NumericError("gen: generated instance unexpectedly violates its hypotheses");
  }
  write_matrix_file(out_e, in.e);
  write_matrix_file(out_f, in.f);
  if (flags.json_out) {
    json j{{"command", "gen"},
           {"type", type},
           {"family", family.empty() ? (type == "t23" ? "block-pair" : "embedded") : family},
           {"n", n},
           {"seed", seed},
           {"path_e", out_e},
           {"path_f", out_f},
           {"conditions", json::array({condition_to_json(reports[0]),
                                       condition_to_json(reports[1])})}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "wrote " << out_e << " and " << out_f << " (" << type << ", n=" << n
              << ", seed=" << seed << ")\n";
    for (const auto& r : reports) print_condition(std::cout, r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drazin inverses of anti-triangular block matrices [[E,I],[F,0]]"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string path_a, path_e, path_f;
  std::string method = "auto";
  std::string gen_type = "t23", gen_family;
  std::size_t gen_n = 4;
  std::uint64_t gen_seed = 0;
  std::string out_e = "E.json", out_f = "F.json";

  CLI::App* drazin = app.add_subcommand("drazin", "Drazin inverse of one square matrix");
  drazin->add_option("matrix", path_a, "matrix file (JSON or CSV)")->required();
  add_common_flags(drazin, flags);

  CLI::App* anti = app.add_subcommand("anti", "inverse of [[E,I],[F,0]]");
  anti->add_option("E", path_e, "E matrix file")->required();
  anti->add_option("F", path_f, "F matrix file")->required();
  anti->add_option("--method", method, "auto|t23|t26|oracle (default auto)")
      ->check(CLI::IsMember({"auto", "t23", "t26", "oracle"}));
  add_common_flags(anti, flags);

  CLI::App* flip = app.add_subcommand("flip", "inverse of [[E,F],[I,0]]");
  flip->add_option("E", path_e, "E matrix file")->required();
  flip->add_option("F", path_f, "F matrix file")->required();
  add_common_flags(flip, flags);

  CLI::App* second = app.add_subcommand("second-order", "inverse of [[E,-F],[-I,0]]");
  second->add_option("E", path_e, "E matrix file")->required();
  second->add_option("F", path_f, "F matrix file")->required();
  add_common_flags(second, flags);

  CLI::App* check = app.add_subcommand("check", "report both hypothesis sets for (E, F)");
  check->add_option("E", path_e, "E matrix file")->required();
  check->add_option("F", path_f, "F matrix file")->required();
  add_common_flags(check, flags);

  CLI::App* gen = app.add_subcommand("gen", "write a generated instance to files");
  gen->add_option("--type", gen_type, "t23|t26")->check(CLI::IsMember({"t23", "t26"}));
  gen->add_option("--family", gen_family,
                  "t23: projected|block-pair; t26: invertible|range-aligned|embedded");
  gen->add_option("--n", gen_n, "block dimension (E and F are n x n)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out-e", out_e, "output path for E");
  gen->add_option("--out-f", out_f, "output path for F");
  add_common_flags(gen, flags);

  CLI11_PARSE(app, argc, argv);

  auto load_pair_files = [&]() {
    return PairInput{read_matrix_file(path_e), read_matrix_file(path_f), path_e, path_f};
  };

  if (drazin->parsed()) {
    return run_guarded(flags.json_out, [&] { return cmd_drazin(path_a, flags); });
  }
  if (anti->parsed()) {
    return run_guarded(flags.json_out,
                       [&] { return run_pair_command("anti", load_pair_files(), method, flags); });
  }
  if (flip->parsed()) {
    return run_guarded(flags.json_out,
                       [&] { return run_pair_command("flip", load_pair_files(), method, flags); });
  }
  if (second->parsed()) {
    return run_guarded(flags.json_out, [&] {
      return run_pair_command("second-order", load_pair_files(), method, flags);
    });
  }
  if (check->parsed()) {
    return run_guarded(flags.json_out, [&] { return cmd_check(load_pair_files(), flags); });
  }
  if (gen->parsed()) {
    return run_guarded(flags.json_out, [&] {
      return cmd_gen(gen_type, gen_family, gen_n, gen_seed, out_e, out_f, flags);
    });
  }
  return 0;
}

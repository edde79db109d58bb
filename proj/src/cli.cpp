#include "ewt/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ewt/classifier.hpp"
#include "ewt/io.hpp"
#include "ewt/maps.hpp"
#include "ewt/states.hpp"
#include "ewt/witnesses.hpp"

namespace ewt {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parameter '" + item + "' is not of the form key=value");
    out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return out;
}

double need(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

double value_or(const std::map<std::string, double>& p, const std::string& key, double fb) {
  auto it = p.find(key);
  return it == p.end() ? fb : it->second;
}

struct MadeObject {
  std::string kind;
  BipartiteOperator op;
};

MadeObject make_family(const std::string& family, const std::map<std::string, double>& p,
                       const OptimOptions& opts) {
  if (family == "flip") return {"witness", flip_witness(int(need(p, "d")))};
  if (family == "reduction") return {"witness", reduction_witness(int(need(p, "d")))};
  if (family == "max_entangled")
    return {"state", max_entangled_projector(int(need(p, "d")))};
  if (family == "isotropic") return {"state", isotropic(int(need(p, "d")), need(p, "p"))};
  if (family == "werner") return {"state", werner(int(need(p, "d")), need(p, "p"))};
  if (family == "w_ab") return {"witness", w_ab_witness(need(p, "a"), need(p, "b"))};
  if (family == "w_abc")
    return {"witness", w_abc_witness(need(p, "a"), need(p, "b"), need(p, "c"))};
  if (family == "w_dk")
    return {"witness", w_dk_witness(int(need(p, "d")), int(need(p, "k")))};
  if (family == "mub") {
    const int d = int(need(p, "d")), m = int(need(p, "m"));
    auto bases = standard_mub(d, m);
    std::vector<Matrix> tilde;
    for (const auto& b : bases) tilde.push_back(b.conjugate());
    return {"witness", mub_witness(bases, tilde)};
  }
  if (family == "chsh") {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector3d a1(value_or(p, "a1x", 1), value_or(p, "a1y", 0), value_or(p, "a1z", 0));
    Eigen::Vector3d a2(value_or(p, "a2x", 0), value_or(p, "a2y", 1), value_or(p, "a2z", 0));
    Eigen::Vector3d b1(value_or(p, "b1x", s), value_or(p, "b1y", s), value_or(p, "b1z", 0));
    Eigen::Vector3d b2(value_or(p, "b2x", s), value_or(p, "b2y", -s), value_or(p, "b2z", 0));
    return {"witness", chsh_witness(a1, a2, b1, b2)};
  }
  if (family == "breuer_hall") {
    const int n = int(need(p, "n"));
    return {"witness", breuer_hall(canonical_antisymmetric_unitary(n)).witness};
  }
  if (family == "robertson") {
    const int n = int(value_or(p, "n", 2));
    return {"witness", robertson_block(n).witness};
  }
  if (family == "phi_p")
    return {"witness", phi_p(int(need(p, "d")), need(p, "p")).map.choi};
  if (family == "tiles_state") {
    BipartiteOperator x = upb_state(tiles_upb());
    return {"state", BipartiteOperator{x.mat / x.mat.trace().real(), x.dA, x.dB}};
  }
  if (family == "upb_steered") {
    const auto vectors = tiles_upb();
    const Eigen::Index D = 9;
    Matrix proj = Matrix::Zero(D, D);
    for (const auto& v : vectors) proj += v.vec * v.vec.adjoint();
    const BipartiteOperator p_op{std::move(proj), 3, 3};
    const BipartiteOperator q_op{Matrix::Zero(D, D), 3, 3};
    auto yes = edge_steered_witness(p_op, q_op, EdgeSubtraction::max_entangled, opts);
    return {"witness", yes.witness};
  }
  if (family == "ghz" || family == "wstate") {
    const auto s = three_qubit_states();
    const Vector& v = family == "ghz" ? s.ghz.vec : s.w.vec;
    return {"state", BipartiteOperator{v * v.adjoint(), 2, 4}};
  }
  if (family == "w3q_genuine") return {"witness", three_qubit_witnesses().genuine};
  if (family == "w3q_full") return {"witness", three_qubit_witnesses().not_full_sep};
  if (family == "w3q_ghz") return {"witness", three_qubit_witnesses().not_w_class};
  throw std::invalid_argument("unknown family '" + family + "'");
}

json report_to_json(const WitnessReport& rep, const json& meta) {
  json j;
  if (meta.contains("family")) j["family"] = meta["family"];
  j["is_positive_operator"] = rep.is_positive_operator;
  json bp = json::object();
  for (const auto& [k, v] : rep.block_positive_k) bp[std::to_string(k)] = v;
  j["block_positive_k"] = std::move(bp);
  json det = json::array();
  for (const auto& d : rep.detected_examples) {
    json e;
    e["k"] = d.k;
    e["expectation"] = d.expectation;
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < d.vec.vec.size(); ++i) {
      re.push_back(d.vec.vec(i).real());
      im.push_back(d.vec.vec(i).imag());
    }
    e["vector_re"] = std::move(re);
    e["vector_im"] = std::move(im);
    det.push_back(std::move(e));
  }
  j["detected_examples"] = std::move(det);
  j["spanning_dim"] = rep.spanning_dim;
  j["spa_p_star"] = rep.spa_p_star;
  j["decomposable"] = to_string(rep.decomposable);
  j["seed"] = rep.seed;
  j["restarts"] = rep.restarts;
  return j;
}

FamilyInfo family_from_meta(const json& meta) {
  FamilyInfo info;
  info.family = meta.value("family", "");
  if (meta.contains("params") && meta["params"].is_object())
    for (const auto& [k, v] : meta["params"].items())
      if (v.is_number()) info.params[k] = v.get<double>();
  return info;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entanglement witness toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int restarts = 0;
  double tol = 1e-7;
  bool json_mode = false;
  app.add_option("--seed", seed, "seed for all randomized routines");
  app.add_option("--restarts", restarts, "multistart count (0 = automatic)");
  app.add_option("--tol", tol, "certification tolerance");
  app.add_flag("--json", json_mode, "emit JSON instead of text");

  auto* c_make = app.add_subcommand("make", "construct a catalog object and write it");
  std::string family, params_spec, out_path;
  c_make->add_option("--family", family, "family name")->required();
  c_make->add_option("--params", params_spec, "comma separated key=value list");
  c_make->add_option("--out", out_path, "output file")->required();

  auto* c_classify = app.add_subcommand("classify", "full witness classification report");
  std::string classify_path, classify_out;
  c_classify->add_option("witness", classify_path, "witness file")->required();
  c_classify->add_option("--out", classify_out, "write the JSON report here");

  auto* c_detect = app.add_subcommand("detect", "evaluate tr(W rho)");
  std::string det_witness, det_state;
  c_detect->add_option("--witness", det_witness)->required();
  c_detect->add_option("--state", det_state)->required();

  auto* c_sweep = app.add_subcommand("sweep", "trace table over a state-family parameter");
  std::string sw_family, sw_param = "p", sw_fixed, sw_witness, sw_wfamily, sw_wparams;
  double sw_from = 0.0, sw_to = 1.0;
  int sw_steps = 21;
  c_sweep->add_option("--state-family", sw_family, "state family to sweep")->required();
  c_sweep->add_option("--param", sw_param, "swept parameter name");
  c_sweep->add_option("--fixed", sw_fixed, "fixed parameters, key=value list");
  c_sweep->add_option("--from", sw_from)->required();
  c_sweep->add_option("--to", sw_to)->required();
  c_sweep->add_option("--steps", sw_steps);
  c_sweep->add_option("--witness", sw_witness, "witness file");
  c_sweep->add_option("--witness-family", sw_wfamily, "witness family");
  c_sweep->add_option("--witness-params", sw_wparams, "witness family parameters");

  auto* c_spa = app.add_subcommand("spa", "structural physical approximation");
  std::string spa_path;
  c_spa->add_option("witness", spa_path)->required();

  auto* c_schmidt = app.add_subcommand("schmidt", "Schmidt decomposition of a vector file");
  std::string schmidt_path;
  c_schmidt->add_option("vector", schmidt_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  OptimOptions opts;
  opts.seed = seed;
  opts.restarts = restarts;
  opts.cert_tol = tol;

  try {
    if (app.got_subcommand(c_make)) {
      const auto params = parse_params(params_spec);
      MadeObject obj = make_family(family, params, opts);
      MatrixFile mf;
      mf.kind = obj.kind;
      mf.op = std::move(obj.op);
      mf.meta["family"] = family;
      mf.meta["params"] = json::object();
      for (const auto& [k, v] : params) mf.meta["params"][k] = v;
      mf.meta["version"] = kVersion;
      if (family == "upb_steered") mf.meta["seed"] = seed;
      save_matrix_file(out_path, mf);
      out << "wrote " << mf.kind << " (" << mf.op.dA << "x" << mf.op.dB << ") to "
          << out_path << "\n";
      return 0;
    }

    if (app.got_subcommand(c_classify)) {
      MatrixFile mf = load_matrix_file(classify_path);
      if (!is_hermitian(mf.op.mat, 1e-8))
        throw MalformedFileError("witness file is not Hermitian");
      FamilyInfo info = family_from_meta(mf.meta);
      WitnessReport rep = classify(mf.op, opts, info.family.empty() ? nullptr : &info);
      const json j = report_to_json(rep, mf.meta);
      if (!classify_out.empty()) {
        std::ofstream f(classify_out);
        f << j.dump(2) << "\n";
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(c_detect)) {
      MatrixFile w = load_matrix_file(det_witness);
      MatrixFile s = load_matrix_file(det_state);
      if (w.op.dA != s.op.dA || w.op.dB != s.op.dB) {
        err << "dimension mismatch: witness is " << w.op.dA << "x" << w.op.dB
            << ", state is " << s.op.dA << "x" << s.op.dB << "\n";
        return 4;
      }
      const double tr = detect(w.op, s.op);
      const bool detected = tr < 0.0;
      if (json_mode) {
        json j;
        j["trace"] = tr;
        j["detected"] = detected;
        out << j.dump(2) << "\n";
      } else {
        out << "trace = " << tr << "\n" << (detected ? "detected" : "not detected") << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_sweep)) {
      auto fixed = parse_params(sw_fixed);
      BipartiteOperator w;
      if (!sw_witness.empty()) {
        w = load_matrix_file(sw_witness).op;
      } else if (!sw_wfamily.empty()) {
        w = make_family(sw_wfamily, parse_params(sw_wparams), opts).op;
      } else {
        throw std::invalid_argument("sweep needs --witness or --witness-family");
      }
      if (sw_steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
      json rows = json::array();
      for (int i = 0; i < sw_steps; ++i) {
        const double x = sw_from + (sw_to - sw_from) * double(i) / double(sw_steps - 1);
        auto p = fixed;
        p[sw_param] = x;
        MadeObject state = make_family(sw_family, p, opts);
        if (state.op.dA != w.dA || state.op.dB != w.dB) {
          err << "dimension mismatch between witness and swept state\n";
          return 4;
        }
        const double tr = detect(w, state.op);
        if (json_mode) {
          rows.push_back(json::array({x, tr}));
        } else {
          out << x << "\t" << tr << "\n";
        }
      }
      if (json_mode) {
        json j;
        j["param"] = sw_param;
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_spa)) {
      MatrixFile mf = load_matrix_file(spa_path);
      if (!is_hermitian(mf.op.mat, 1e-8))
        throw MalformedFileError("witness file is not Hermitian");
      SpaResult r = spa(mf.op);
      const double lmin = min_eigenvalue(r.spa_state.mat);
      if (json_mode) {
        json j;
        j["p_star"] = r.p_star;
        j["was_positive"] = r.was_positive;
        j["spa_min_eigenvalue"] = lmin;
        j["ppt"] = r.ppt.is_ppt;
        j["min_pt_eigenvalue"] = r.ppt.min_pt_eigenvalue;
        j["ccnr_sum"] = r.ccnr.sum;
        j["ccnr_flags_entangled"] = r.ccnr.flags_entangled;
        out << j.dump(2) << "\n";
      } else {
        out << "p_star = " << r.p_star << (r.was_positive ? " (already positive)" : "")
            << "\n";
        out << "spa state min eigenvalue = " << lmin << "\n";
        out << "ppt screen: " << (r.ppt.is_ppt ? "PPT" : "NPT")
            << " (min PT eigenvalue " << r.ppt.min_pt_eigenvalue << ")\n";
        out << "ccnr screen: sum = " << r.ccnr.sum
            << (r.ccnr.flags_entangled ? " (flags entangled)" : "") << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_schmidt)) {
      PureState psi = load_vector_file(schmidt_path);
      if (psi.norm() <= 0.0) throw MalformedFileError("zero vector has no decomposition");
      SchmidtData sd = schmidt_decompose(psi);
      if (json_mode) {
        json j;
        json coeffs = json::array();
        for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i)
          coeffs.push_back(sd.coefficients(i));
        j["coefficients"] = std::move(coeffs);
        j["rank"] = sd.rank;
        out << j.dump(2) << "\n";
      } else {
        out << "schmidt rank = " << sd.rank << "\ncoefficients =";
        for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i)
          out << " " << sd.coefficients(i);
        out << "\n";
      }
      return 0;
    }
  } catch (const MalformedFileError& e) {
    err << "malformed input: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ewt

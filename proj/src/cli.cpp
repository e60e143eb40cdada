#include "gda/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "gda/dieudonne.hpp"
#include "gda/error.hpp"
#include "gda/oracle.hpp"
#include "gda/samples.hpp"
#include "gda/sk.hpp"
#include "gda/verify.hpp"

namespace gda {

Json to_json(const RunReport& r, bool include_timings) {
  Json j;
  j["command"] = r.command;
  j["inputs_digest"] = r.inputs_digest;
  j["outputs"] = r.outputs;
  if (include_timings) j["timings"] = Json{{"seconds", r.seconds}};
  j["warnings"] = r.warnings;
  j["exit_code"] = r.exit_code;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    raise(ErrorCode::ValidationError, "SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

namespace {

struct Loaded {
  AlgebraInstance instance;
  std::string text;
};

Loaded load(const std::string& path_or_name) {
  if (path_or_name.empty()) raise(ErrorCode::ValidationError, "--algebra is required");
  if (std::filesystem::exists(path_or_name)) {
    std::string text = read_file(path_or_name);
    return {parse_algebra_spec(text, path_or_name), text};
  }
  const std::string stem = std::filesystem::path(path_or_name).stem().string();
  return {load_sample(stem), sample_text(stem)};
}

// Everything that determines the outputs, in a fixed order.
std::string digest(const std::string& command, const CommandInputs& in, const std::vector<std::string>& texts) {
  std::ostringstream s;
  s << "command=" << command << '\n'
    << "n=" << (in.n ? std::to_string(*in.n) : "-") << '\n'
    << "shifts=" << in.shifts.value_or("-") << '\n'
    << "shift_spec=" << in.shift_spec.value_or("-") << '\n'
    << "suite=" << in.suite << "\nseed=" << in.seed << "\nsamples=" << in.samples << "\nbudget=" << in.budget
    << "\noracle=" << in.oracle << '\n';
  for (const auto& t : texts) s << t.size() << ':' << t << '\n';
  return "sha256:" + sha256_hex(s.str());
}

// Shift vector for size n: --shifts, then the matrix file, then the spec's [matrix] section.
std::vector<GradeVector> resolve_shifts(const CommandInputs& in, const AlgebraInstance& inst, std::size_t n,
                                        const Json* matrix_json) {
  const std::size_t k = inst.algebra->ambient_rank();
  std::vector<GradeVector> shifts;
  if (in.shifts) {
    shifts = parse_shifts(*in.shifts, k);
  } else if (in.shift_spec) {
    auto delta = parse_shifts("[" + *in.shift_spec + "]", k);
    shifts = arithmetic_shifts(delta[0], n);
  } else if (matrix_json && matrix_json->contains("shifts")) {
    shifts = parse_shifts((*matrix_json)["shifts"].dump(), k);
  } else if (inst.shifts && inst.shifts->size() == n) {
    shifts = *inst.shifts;
  } else {
    shifts.assign(n, GradeVector(k, 0));
  }
  if (shifts.size() != n)
    raise(ErrorCode::ValidationError, "expected " + std::to_string(n) + " shift vectors, got " + std::to_string(shifts.size()));
  return shifts;
}

struct MatrixInput {
  Loaded algebra;
  std::string matrix_text;
  GradedMatrix a;
  std::optional<ShiftedMatrixAlgebra> s;
};

MatrixInput load_matrix_input(const CommandInputs& in) {
  MatrixInput m{load(in.algebra), {}, {}, std::nullopt};
  if (in.matrix.empty()) raise(ErrorCode::ValidationError, "--matrix is required");
  m.matrix_text = read_file(in.matrix);
  Json j;
  try {
    j = Json::parse(m.matrix_text);
  } catch (const Json::parse_error& e) {
    raise(ErrorCode::ParseError, in.matrix + ": " + e.what());
  }
  const auto& E = *m.algebra.instance.algebra;
  m.a = matrix_from_json(E, j);
  m.s.emplace(m.algebra.instance.algebra, m.a.size(), resolve_shifts(in, m.algebra.instance, m.a.size(), &j));
  return m;
}

template <class F>
RunReport timed(const std::string& command, F body) {
  RunReport r;
  r.command = command;
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json shifts_json(const ShiftedMatrixAlgebra& s) {
  Json j = Json::array();
  for (const auto& v : s.shifts()) j.push_back(to_json(v));
  return j;
}

}  // namespace

RunReport cmd_bruhat(const CommandInputs& in) {
  return timed("bruhat", [&](RunReport& r) {
    auto m = load_matrix_input(in);
    r.inputs_digest = digest("bruhat", in, {m.algebra.text, m.matrix_text});
    const auto& s = *m.s;
    r.warnings = s.warnings();
    auto f = bruhat_decompose(s, m.a);
    Json units = Json::array();
    for (const auto& u : f.U) units.push_back(to_json(u));
    Json cert = Json::array();
    for (const auto& c : f.certificate) cert.push_back(to_json(c));
    r.outputs["shifts"] = shifts_json(s);
    r.outputs["degree"] = to_json(s.degree(m.a));
    r.outputs["T"] = to_json(f.T);
    r.outputs["certificate"] = cert;
    r.outputs["U"] = units;
    r.outputs["perm"] = to_json(f.perm);
    r.outputs["V"] = to_json(f.V);
    r.outputs["strict"] = f.strict;
  });
}

RunReport cmd_det(const CommandInputs& in) {
  return timed("det", [&](RunReport& r) {
    auto m = load_matrix_input(in);
    r.inputs_digest = digest("det", in, {m.algebra.text, m.matrix_text});
    const auto& s = *m.s;
    r.warnings = s.warnings();
    auto k = in_kernel(s, m.a);
    const GradeVector deg = s.degree(m.a);
    r.outputs["shifts"] = shifts_json(s);
    r.outputs["degree"] = to_json(deg);
    r.outputs["det_E"] = to_json(k.det);
    if (is_zero(deg)) r.outputs["det0"] = to_json(det0(s, m.a));
    r.outputs["in_kernel"] = k.in_kernel;
    if (k.witness) {
      Json factors = Json::array();
      for (const auto& f : k.witness->factors) factors.push_back(to_json(f));
      Json scalars = Json::array();
      for (const auto& c : k.witness->block_scalars) scalars.push_back(to_json(c));
      r.outputs["witness"] = Json{{"factors", factors}, {"block_scalars", scalars}, {"D", to_json(k.witness->D)}};
    }
  });
}

RunReport cmd_nrd(const CommandInputs& in) {
  return timed("nrd", [&](RunReport& r) {
    auto m = load_matrix_input(in);
    r.inputs_digest = digest("nrd", in, {m.algebra.text, m.matrix_text});
    const auto& s = *m.s;
    r.warnings = s.warnings();
    const GradeVector deg = s.degree(m.a);
    r.outputs["shifts"] = shifts_json(s);
    r.outputs["degree"] = to_json(deg);
    r.outputs["index"] = s.algebra().index();
    if (is_zero(deg)) {
      r.outputs["nrd_S0"] = to_json(nrd_S0(s, m.a));
      r.outputs["nrd_S"] = to_json(nrd_S(s, m.a));
    } else {
      r.outputs["nrd_S0"] = nullptr;
      r.outputs["nrd_S"] = nullptr;
      r.warnings.push_back("nonzero degree: S_h^(1) lies in S_0^*, so the reduced norm is not evaluated");
    }
    r.outputs["in_Sh1"] = in_Sh1(s, m.a);
  });
}

RunReport cmd_sk(const CommandInputs& in) {
  return timed("sk", [&](RunReport& r) {
    auto loaded = load(in.algebra);
    const auto& inst = loaded.instance;
    r.inputs_digest = digest("sk", in, {loaded.text});
    const auto& E = *inst.algebra;
    const std::size_t n = in.n ? *in.n : inst.n.value_or(inst.shifts ? inst.shifts->size() : 1);
    const auto shifts = resolve_shifts(in, inst, n, nullptr);
    ShiftedMatrixAlgebra s(inst.algebra, n, shifts);
    r.warnings = s.warnings();
    // Shifts relative to the first; unshifted when all lie in Gamma_E.
    std::vector<GradeVector> rel;
    bool unshifted = true;
    for (const auto& v : shifts) {
      rel.push_back(v - shifts[0]);
      unshifted = unshifted && E.gamma_e().contains(rel.back());
    }

    r.outputs["algebra"] = inst.name;
    r.outputs["n"] = n;
    r.outputs["shifts"] = shifts_json(s);
    r.outputs["index"] = E.index();
    r.outputs["exponent"] = E.exponent();
    r.outputs["sk_E"] = to_json(sk_E(E));
    std::optional<GroupDescription> formula;
    if (unshifted) {
      r.outputs["kernel"] = to_json(kernel_group(E, n));
      formula = sk_h_unshifted(E, n);
    } else if (arithmetic_shifts(rel[1], n) == rel) {
      formula = sk_h_shifted(E, n, rel[1]);
    } else {
      r.warnings.push_back("no closed form for this shift pattern; the oracle result is reported alone");
    }
    r.outputs["sk_h"] = formula ? to_json(*formula) : Json(nullptr);
    if (in.oracle && E.field().is_finite()) {
      OracleOptions opt;
      opt.budget = in.budget;
      auto o = sk_oracle(s, opt);
      r.outputs["oracle"] = to_json(o);
      if (formula && formula->finite) r.outputs["oracle_agrees"] = o.group == formula->group;
    } else {
      r.outputs["oracle"] = nullptr;
    }
  });
}

RunReport cmd_verify(const CommandInputs& in) {
  return timed("verify", [&](RunReport& r) {
    std::vector<AlgebraInstance> algebras;
    std::vector<std::string> texts;
    if (in.algebra.empty()) {
      for (const auto& name : sample_names()) {
        algebras.push_back(load_sample(name));
        texts.push_back(sample_text(name));
      }
    } else {
      auto loaded = load(in.algebra);
      algebras.push_back(loaded.instance);
      texts.push_back(loaded.text);
    }
    r.inputs_digest = digest("verify", in, texts);
    VerifyOptions opt;
    opt.seed = in.seed;
    opt.samples = in.samples;
    opt.budget = in.budget;
    auto results = run_suites(in.suite, algebras, opt);
    Json suites = Json::array();
    bool ok = true;
    for (const auto& s : results) {
      suites.push_back(to_json(s));
      ok = ok && s.passed();
    }
    Json names = Json::array();
    for (const auto& a : algebras) names.push_back(a.name);
    r.outputs["algebras"] = names;
    r.outputs["suites"] = suites;
    r.outputs["passed"] = ok;
    r.exit_code = ok ? 0 : 1;
  });
}

RunReport run_command(const std::string& command, const CommandInputs& in) {
  try {
    if (command == "bruhat") return cmd_bruhat(in);
    if (command == "det") return cmd_det(in);
    if (command == "nrd") return cmd_nrd(in);
    if (command == "sk") return cmd_sk(in);
    if (command == "verify") return cmd_verify(in);
    raise(ErrorCode::ValidationError, "unknown command '" + command + "'");
  } catch (const Error& e) {
    RunReport r;
    r.command = command;
    r.outputs["error"] = Json{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    r.exit_code = is_input_error(e.code()) ? 2 : 1;
    return r;
  }
}

}  // namespace gda

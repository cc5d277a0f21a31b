#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "potentsum/json_io.hpp"

using namespace potentsum;

namespace {

struct GlobalOpts {
  std::string backend = "exact";
  double eps = 1e-9;
  unsigned long seed = 0;
  bool json = false;
};

void print_banner(const GlobalOpts& g) {
  if (!g.json && g.backend == "float")
    std::cout << "*** approximate verification (eps=" << FloatComplex::tolerance() << ") ***\n";
}

void emit(const GlobalOpts& g, const Json& payload, const std::string& plain) {
  if (g.json) {
    Json out = payload;
    out["seed"] = g.seed;
    out["approximate"] = g.backend == "float";
    std::cout << out.dump(2) << "\n";
  } else {
    print_banner(g);
    std::cout << plain;
  }
}

// the file's "backend" field wins; otherwise the --backend flag decides how
// the scalar-syntax entries are interpreted
AnyMatrix load_matrix(const GlobalOpts& g, const std::string& path) {
  Json j = load_json_file(path);
  std::string backend = j.value("backend", g.backend);
  if (backend == "float" || g.backend == "float") return float_matrix_from_json(j);
  return exact_matrix_from_json(j);
}

Matrix<CycloNum> require_exact(AnyMatrix&& any, const char* what) {
  if (!std::holds_alternative<Matrix<CycloNum>>(any))
    throw UnsupportedError(std::string(what) +
                           " requires the exact backend (cyclotomic coordinates cannot be "
                           "recovered from floating-point traces)");
  return std::get<Matrix<CycloNum>>(std::move(any));
}

int run_check_potent(const GlobalOpts& g, int k, const std::string& file) {
  AnyMatrix any = load_matrix(g, file);
  bool result = std::visit(
      [&](const auto& m) { return is_kpotent(m, static_cast<unsigned long>(k) + 1); }, any);
  Json payload{{"k", k}, {"potent", result}};
  emit(g, payload, std::to_string(k + 1) + "-potent: " + (result ? "true" : "false") + "\n");
  return result ? 0 : 1;
}

int run_order(const GlobalOpts& g, unsigned long bound, const std::string& file) {
  AnyMatrix any = load_matrix(g, file);
  std::optional<unsigned long> ord =
      std::visit([&](const auto& m) { return order_of(m, bound); }, any);
  Json payload{{"bound", bound}};
  if (ord)
    payload["order"] = *ord;
  else
    payload["order"] = nullptr;
  emit(g, payload,
       ord ? "order: " + std::to_string(*ord) + "\n"
           : "order: none within bound " + std::to_string(bound) + "\n");
  return ord ? 0 : 1;
}

int run_analyze(const GlobalOpts& g, int k, long budget, const std::string& file) {
  Matrix<CycloNum> m = require_exact(load_matrix(g, file), "analyze");
  if (m.proto().k() != k)
    throw ParseError("analyze: matrix k (" + std::to_string(m.proto().k()) +
                     ") does not match --k " + std::to_string(k));
  long r = rank(m);
  CycloNum t = m.trace();
  CertificateSearchOptions opts;
  opts.budget = budget;
  TraceCertificate cert = find_certificate(t, k, r, opts);
  Json payload = certificate_to_json(cert);
  payload["rank"] = r;
  payload["trace"] = t.str();
  emit(g, payload,
       "trace: " + t.str() + "\nrank: " + std::to_string(r) + "\ncertificate F(x) = " +
           cert.str() + "\nF(1) = " + std::to_string(cert.f1()) + "\n");
  return 0;
}

int run_decompose(const GlobalOpts& g, int k, const std::string& mode,
                  const std::string& cert_file, const std::string& multiroot_file, long budget,
                  const std::string& out_file, const std::string& file) {
  Matrix<CycloNum> m = require_exact(load_matrix(g, file), "decompose");
  if (k <= 0) k = m.proto().k();  // default: the matrix backend order
  Decomposition<CycloNum> dec;
  if (!multiroot_file.empty()) {
    dec = decompose_multiroot_sum(m, multiroot_from_json(load_json_file(multiroot_file)));
  } else if (mode == "sum") {
    std::optional<TraceCertificate> cert;
    if (!cert_file.empty()) cert = certificate_from_json(load_json_file(cert_file));
    PotentSumOptions opts;
    opts.budget = budget;
    dec = decompose_potent_sum(m, k, cert, opts);
  } else if (mode == "lincomb") {
    SignedCertificate cert;
    if (!cert_file.empty())
      cert = signed_certificate_from_json(load_json_file(cert_file));
    else
      cert = find_signed_certificate(m.trace(), k, Rational(rank(m)));
    dec = decompose_linear_combination(m, cert);
  } else if (mode == "finite-order") {
    dec = decompose_finite_order(m, k);
  } else {
    throw ParseError("decompose: unknown mode \"" + mode + "\"");
  }
  VerifyReport report = verify_decomposition(dec);
  Json payload = decomposition_to_json(dec, &report);
  if (!out_file.empty()) save_json_file(out_file, payload);
  std::string plain = "summands: " + std::to_string(dec.summands.size()) +
                      "\nverified: " + (dec.verified ? "true" : "false") + "\n";
  if (dec.certificate) plain += "certificate F(x) = " + dec.certificate->str() + "\n";
  for (const auto& c : dec.counts)
    plain += c.label + ": constructed " + std::to_string(c.constructed) + ", paper formula " +
             std::to_string(c.claimed) + " (" + c.formula + ")" +
             (c.matches() ? "" : "  [differs]") + "\n";
  if (!out_file.empty()) plain += "decomposition written to " + out_file + "\n";
  emit(g, payload, plain);
  return dec.verified ? 0 : 1;
}

template <class S>
int run_decompose14_impl(const GlobalOpts& g, const LazyMatrix<S>& a, int k, long truncate_n,
                         const std::string& out_file) {
  LazyDecomposition<S> dec = decompose14(a);
  Json summands = Json::array();
  bool all_potent = true;
  for (const auto& s : dec.summands) {
    TruncatedView<S> view = truncate(s, truncate_n, true);
    bool potent = is_kpotent(view.block, static_cast<unsigned long>(k) + 1);
    all_potent = all_potent && potent;
    summands.push_back(Json{{"provenance", s.provenance()},
                            {"requested", view.requested},
                            {"actual", view.actual},
                            {"potent", potent},
                            {"matrix", matrix_to_json(view.block)}});
  }
  bool sum_ok = true;
  for (long i = 1; i <= truncate_n && sum_ok; ++i)
    for (long j = 1; j <= truncate_n; ++j) {
      S acc = a.proto().zero_like();
      for (const auto& s : dec.summands) acc += s.entry(i, j);
      if (acc != dec.target.entry(i, j)) {
        sum_ok = false;
        break;
      }
    }
  Json payload{{"k", k},
               {"truncate", truncate_n},
               {"summand_count", dec.summands.size()},
               {"sum_ok", sum_ok},
               {"all_potent", all_potent},
               {"summands", summands}};
  if (!out_file.empty()) save_json_file(out_file, payload);
  std::string plain = "summands: " + std::to_string(dec.summands.size()) + " (<= 14)\n";
  for (const auto& s : summands)
    plain += "  " + s["provenance"].get<std::string>() + ": truncation " +
             std::to_string(s["actual"].get<long>()) + " potent " +
             (s["potent"].get<bool>() ? "true" : "false") + "\n";
  plain += std::string("entrywise reconstruction at N: ") + (sum_ok ? "true" : "false") + "\n";
  if (!out_file.empty()) plain += "report written to " + out_file + "\n";
  emit(g, payload, plain);
  return (sum_ok && all_potent) ? 0 : 1;
}

int run_decompose14(const GlobalOpts& g, long truncate_n, const std::string& out_file,
                    const std::string& file) {
  Json j = load_json_file(file);
  int k = j.value("k", 2);
  if (g.backend == "float")
    return run_decompose14_impl(g, float_family_from_json(j), k, truncate_n, out_file);
  return run_decompose14_impl(g, exact_family_from_json(j), k, truncate_n, out_file);
}

int run_verify(const GlobalOpts& g, const std::string& file) {
  AnyDecomposition any = decomposition_from_json(load_json_file(file));
  return std::visit(
      [&](auto& dec) {
        VerifyReport report = verify_decomposition(dec);
        Json payload = decomposition_to_json(dec, &report);
        std::string plain;
        for (size_t i = 0; i < report.summand_ok.size(); ++i)
          plain += "summand " + std::to_string(i + 1) + ": " +
                   (report.summand_ok[i] ? "ok" : "FAILED") + "\n";
        plain += std::string("sum check: ") + (report.sum_ok ? "ok" : "FAILED") + "\n";
        plain += std::string("verified: ") + (report.ok() ? "true" : "false") + "\n";
        emit(g, payload, plain);
        return report.ok() ? 0 : 1;
      },
      any);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "potentsum: exact decompositions of matrices into sums and linear combinations of "
      "(k+1)-potent and finite-order matrices"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--backend", g.backend, "scalar backend")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--eps", g.eps, "float-backend tolerance");
  app.add_option("--seed", g.seed, "report seed (outputs are deterministic)");
  app.add_flag("--json", g.json, "machine-readable output");

  int k = 2;
  unsigned long bound = 64;
  long budget = 24;
  long truncate_n = 16;
  std::string mode = "sum", cert_file, multiroot_file, out_file, input_file;

  auto* check = app.add_subcommand("check-potent", "test whether A^{k+1} = A");
  check->add_option("--k", k, "root order k")->required();
  check->add_option("file", input_file, "matrix json file")->required();

  auto* order = app.add_subcommand("order", "smallest m <= bound with A^m = I");
  order->add_option("--bound", bound, "search bound")->required();
  order->add_option("file", input_file, "matrix json file")->required();

  auto* analyze = app.add_subcommand("analyze", "trace certificate for potent-sum feasibility");
  analyze->add_option("--k", k, "root order k")->required();
  analyze->add_option("--budget", budget, "certificate search budget (max F(1))");
  analyze->add_option("file", input_file, "matrix json file")->required();

  int dec_k = 0;  // 0: take k from the matrix file
  auto* dec = app.add_subcommand("decompose", "construct a decomposition");
  dec->add_option("--k", dec_k, "root order k (default: the matrix k)");
  dec->add_option("--mode", mode, "sum | lincomb | finite-order")
      ->check(CLI::IsMember({"sum", "lincomb", "finite-order"}));
  dec->add_option("--cert", cert_file, "certificate json (trace or signed)");
  dec->add_option("--multiroot-cert", multiroot_file, "multiroot certificate json");
  dec->add_option("--budget", budget, "certificate search budget");
  dec->add_option("--out", out_file, "write the decomposition json here");
  dec->add_option("file", input_file, "matrix json file")->required();

  auto* dec14 = app.add_subcommand("decompose14", "column-finite pipeline (<= 14 summands)");
  dec14->add_option("--truncate", truncate_n, "truncation size for verification");
  dec14->add_option("--out", out_file, "write the truncation report here");
  dec14->add_option("file", input_file, "lazy-family json file")->required();

  auto* verify = app.add_subcommand("verify", "re-verify a decomposition json");
  verify->add_option("file", input_file, "decomposition json file")->required();

  CLI11_PARSE(app, argc, argv);
  FloatComplex::tolerance() = g.eps;

  try {
    if (check->parsed()) return run_check_potent(g, k, input_file);
    if (order->parsed()) return run_order(g, bound, input_file);
    if (analyze->parsed()) return run_analyze(g, k, budget, input_file);
    if (dec->parsed())
      return run_decompose(g, dec_k, mode, cert_file, multiroot_file, budget, out_file,
                           input_file);
    if (dec14->parsed()) return run_decompose14(g, truncate_n, out_file, input_file);
    if (verify->parsed()) return run_verify(g, input_file);
  } catch (const InfeasibleError& e) {
    Json err{{"error", e.what()}, {"kind", "infeasible"}};
    std::cerr << (g.json ? err.dump() : std::string("infeasible: ") + e.what()) << "\n";
    return 1;
  } catch (const NotPotentError& e) {
    Json err{{"error", e.what()}, {"kind", "not-potent"}};
    std::cerr << (g.json ? err.dump() : std::string("not potent: ") + e.what()) << "\n";
    return 1;
  } catch (const Error& e) {
    Json err{{"error", e.what()}, {"kind", "input"}};
    std::cerr << (g.json ? err.dump() : std::string("error: ") + e.what()) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

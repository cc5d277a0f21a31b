#include "potentsum/json_io.hpp"

#include <fstream>

namespace potentsum {

namespace {

int read_k(const Json& j) {
  if (!j.contains("k") || !j["k"].is_number_integer())
    throw ParseError("matrix json: missing integer field \"k\"");
  int k = j["k"].get<int>();
  if (k < 1) throw ParseError("matrix json: k must be >= 1");
  return k;
}

std::pair<int, int> read_shape(const Json& j) {
  if (!j.contains("rows") || !j.contains("cols"))
    throw ParseError("matrix json: missing \"rows\"/\"cols\"");
  int rows = j["rows"].get<int>();
  int cols = j["cols"].get<int>();
  if (rows < 1 || cols < 1) throw ParseError("matrix json: dimensions must be positive");
  return {rows, cols};
}

const Json& entry_at(const Json& entries, int i, int jcol) {
  if (!entries.is_array() || static_cast<int>(entries.size()) <= i || !entries[i].is_array() ||
      static_cast<int>(entries[i].size()) <= jcol)
    throw ParseError("matrix json: entries array has the wrong shape");
  return entries[i][jcol];
}

FloatComplex parse_float_entry(const Json& e, int k) {
  if (e.is_string()) return FloatComplex::parse(k, e.get<std::string>());
  if (e.is_number()) return FloatComplex(std::complex<double>(e.get<double>(), 0.0), k);
  if (e.is_object() && e.contains("re"))
    return FloatComplex(
        std::complex<double>(e["re"].get<double>(), e.value("im", 0.0)), k);
  throw ParseError("matrix json: float entry must be a string, number, or {re, im}");
}

}  // namespace

Json matrix_to_json(const Matrix<CycloNum>& m) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    entries.push_back(std::move(row));
  }
  return Json{{"k", m.proto().k()},
              {"backend", "exact"},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(entries)}};
}

Json matrix_to_json(const Matrix<FloatComplex>& m) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      std::complex<double> v = m.at(i, j).value();
      if (v.imag() == 0.0)
        row.push_back(v.real());
      else
        row.push_back(Json{{"re", v.real()}, {"im", v.imag()}});
    }
    entries.push_back(std::move(row));
  }
  return Json{{"k", m.proto().k()},
              {"backend", "float"},
              {"eps", FloatComplex::tolerance()},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", std::move(entries)}};
}

Matrix<CycloNum> exact_matrix_from_json(const Json& j) {
  int k = read_k(j);
  auto [rows, cols] = read_shape(j);
  auto field = CycloField::get(k);
  Matrix<CycloNum> m(rows, cols, CycloNum(field));
  const Json& entries = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) {
      const Json& e = entry_at(entries, i, c);
      if (!e.is_string()) throw ParseError("matrix json: exact entries must be strings");
      m.at(i, c) = CycloNum::parse(field, e.get<std::string>());
    }
  return m;
}

Matrix<FloatComplex> float_matrix_from_json(const Json& j) {
  int k = read_k(j);
  auto [rows, cols] = read_shape(j);
  if (j.contains("eps")) FloatComplex::tolerance() = j["eps"].get<double>();
  Matrix<FloatComplex> m(rows, cols, FloatComplex::zero(k));
  const Json& entries = j.at("entries");
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m.at(i, c) = parse_float_entry(entry_at(entries, i, c), k);
  return m;
}

AnyMatrix matrix_from_json(const Json& j) {
  std::string backend = j.value("backend", "exact");
  if (backend == "exact") return exact_matrix_from_json(j);
  if (backend == "float") return float_matrix_from_json(j);
  throw ParseError("matrix json: unknown backend \"" + backend + "\"");
}

// ---- certificates ----

Json certificate_to_json(const TraceCertificate& c) {
  return Json{{"k", c.k}, {"coeffs", c.coeffs}, {"F1", c.f1()}};
}

TraceCertificate certificate_from_json(const Json& j) {
  TraceCertificate c;
  c.k = read_k(j);
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw ParseError("certificate json: missing \"coeffs\" array");
  for (const auto& e : j["coeffs"]) c.coeffs.push_back(e.get<long>());
  if (static_cast<int>(c.coeffs.size()) != c.k)
    throw ParseError("certificate json: coeffs must have length k");
  return c;
}

Json multiroot_to_json(const MultiRootCertificate& c) {
  Json roots = Json::array();
  for (const auto& b : c.bands) roots.push_back(Json{{"beta", b.beta}, {"coeffs", b.coeffs}});
  return Json{{"a0", c.a0}, {"roots", std::move(roots)}};
}

MultiRootCertificate multiroot_from_json(const Json& j) {
  MultiRootCertificate c;
  c.a0 = j.value("a0", 0L);
  if (j.contains("roots")) {
    for (const auto& r : j["roots"]) {
      MultiRootBand b;
      b.beta = r.at("beta").get<int>();
      for (const auto& e : r.at("coeffs")) b.coeffs.push_back(e.get<long>());
      c.bands.push_back(std::move(b));
    }
  }
  return c;
}

Json signed_certificate_to_json(const SignedCertificate& c) {
  Json coeffs = Json::array();
  for (int j = 0; j < c.k; ++j) {
    auto it = c.coeffs.find(j);
    coeffs.push_back(it == c.coeffs.end() ? "0" : it->second.get_str());
  }
  return Json{{"k", c.k}, {"coeffs", std::move(coeffs)}, {"signed", true}};
}

SignedCertificate signed_certificate_from_json(const Json& j) {
  SignedCertificate c;
  c.k = read_k(j);
  const Json& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != c.k)
    throw ParseError("signed certificate json: coeffs must have length k");
  for (int p = 0; p < c.k; ++p) {
    Rational v = coeffs[p].is_string() ? parse_rational(coeffs[p].get<std::string>())
                                       : Rational(coeffs[p].get<long>());
    if (v != 0) c.coeffs[p] = v;
  }
  return c;
}

// ---- decompositions ----

namespace {

const char* kind_name(SummandKind k) {
  switch (k) {
    case SummandKind::Potent:
      return "potent";
    case SummandKind::FiniteOrder:
      return "order";
    case SummandKind::ScalarMultiple:
      return "scalar-multiple";
  }
  return "potent";
}

SummandKind kind_from_name(const std::string& s) {
  if (s == "potent") return SummandKind::Potent;
  if (s == "order") return SummandKind::FiniteOrder;
  if (s == "scalar-multiple") return SummandKind::ScalarMultiple;
  throw ParseError("decomposition json: unknown summand kind \"" + s + "\"");
}

template <class S>
Json decomposition_to_json_impl(const Decomposition<S>& d, const VerifyReport* report) {
  Json out;
  out["target"] = matrix_to_json(d.target);
  out["mode"] = d.mode == DecompositionMode::Sum ? "sum" : "linear-combination";
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    Json e;
    e["matrix"] = matrix_to_json(s.matrix);
    e["kind"] = kind_name(s.kind);
    e["order"] = s.order;
    if (s.kind == SummandKind::ScalarMultiple) e["coefficient"] = s.coefficient.str();
    e["provenance"] = s.provenance;
    summands.push_back(std::move(e));
  }
  out["summands"] = std::move(summands);
  Json ver;
  ver["verified"] = d.verified;
  ver["approximate"] = S::approximate;
  if (report) {
    ver["per_summand"] = report->summand_ok;
    ver["sum"] = report->sum_ok;
  }
  out["verification"] = std::move(ver);
  if (d.certificate) out["certificate"] = certificate_to_json(*d.certificate);
  if (!d.counts.empty()) {
    Json counts = Json::array();
    for (const auto& c : d.counts)
      counts.push_back(Json{{"label", c.label},
                            {"constructed", c.constructed},
                            {"claimed", c.claimed},
                            {"formula", c.formula},
                            {"matches", c.matches()}});
    out["counts"] = std::move(counts);
  }
  return out;
}

template <class S, class EntryParser>
Decomposition<S> decomposition_from_json_impl(const Json& j, Matrix<S> (*mat_parse)(const Json&),
                                              EntryParser scalar_parse) {
  Decomposition<S> d;
  d.target = mat_parse(j.at("target"));
  std::string mode = j.value("mode", "sum");
  d.mode = mode == "sum" ? DecompositionMode::Sum : DecompositionMode::LinearCombination;
  for (const auto& e : j.at("summands")) {
    Summand<S> s;
    s.matrix = mat_parse(e.at("matrix"));
    s.kind = kind_from_name(e.value("kind", "potent"));
    s.order = e.value("order", 2UL);
    if (e.contains("coefficient")) s.coefficient = scalar_parse(e["coefficient"], d.target);
    s.provenance = e.value("provenance", "");
    d.summands.push_back(std::move(s));
  }
  if (j.contains("certificate")) d.certificate = certificate_from_json(j["certificate"]);
  return d;
}

}  // namespace

Json decomposition_to_json(const Decomposition<CycloNum>& d, const VerifyReport* report) {
  return decomposition_to_json_impl(d, report);
}

Json decomposition_to_json(const Decomposition<FloatComplex>& d, const VerifyReport* report) {
  return decomposition_to_json_impl(d, report);
}

AnyDecomposition decomposition_from_json(const Json& j) {
  std::string backend = j.at("target").value("backend", "exact");
  if (backend == "exact") {
    return decomposition_from_json_impl<CycloNum>(
        j, &exact_matrix_from_json, [](const Json& e, const Matrix<CycloNum>& target) {
          return CycloNum::parse(target.proto().field(), e.get<std::string>());
        });
  }
  if (backend == "float") {
    return decomposition_from_json_impl<FloatComplex>(
        j, &float_matrix_from_json, [](const Json& e, const Matrix<FloatComplex>& target) {
          return parse_float_entry(e, target.proto().k());
        });
  }
  throw ParseError("decomposition json: unknown backend \"" + backend + "\"");
}

// ---- lazy families ----

namespace {

template <class S, class ParseEntry>
LazyMatrix<S> family_from_json_impl(const Json& j, const S& proto, ParseEntry parse_entry) {
  std::string family = j.value("family", "banded");

  std::vector<std::pair<long, long>> perturb_pos;
  std::vector<S> perturb_val;
  if (j.contains("perturb")) {
    for (const auto& p : j["perturb"]) {
      perturb_pos.emplace_back(p.at("i").get<long>(), p.at("j").get<long>());
      perturb_val.push_back(parse_entry(p.at("v")));
    }
  }
  auto perturbed = [perturb_pos, perturb_val](long i, long jj, S base) {
    for (size_t t = 0; t < perturb_pos.size(); ++t)
      if (perturb_pos[t].first == i && perturb_pos[t].second == jj)
        base += perturb_val[t];
    return base;
  };
  long perturb_max_row = 0;
  for (const auto& [pi, pj] : perturb_pos) perturb_max_row = std::max(perturb_max_row, pi);

  if (family == "diagonal" || family == "banded") {
    std::map<long, std::vector<S>> band;
    if (family == "diagonal") {
      band[0] = {parse_entry(j.at("value"))};
    } else {
      for (const auto& [key, val] : j.at("band").items()) {
        long offset = std::stol(key);
        std::vector<S> cycle;
        if (val.is_array())
          for (const auto& e : val) cycle.push_back(parse_entry(e));
        else
          cycle.push_back(parse_entry(val));
        if (cycle.empty()) throw ParseError("family json: empty band pattern");
        band[offset] = std::move(cycle);
      }
    }
    long below = 0;
    for (const auto& [o, _] : band) below = std::max(below, -o);
    auto gen = [band, perturbed, proto](long i, long jj) {
      S v = proto.zero_like();
      auto it = band.find(jj - i);
      if (it != band.end()) {
        const auto& cycle = it->second;
        v = cycle[static_cast<size_t>((std::min(i, jj) - 1) % static_cast<long>(cycle.size()))];
      }
      return perturbed(i, jj, std::move(v));
    };
    auto sup = [below, perturb_max_row](long jj) { return std::max(jj + below, perturb_max_row); };
    StructureTag tag = StructureTag::General;
    if (band.size() == 1 && band.count(0)) tag = StructureTag::Diagonal;
    return LazyMatrix<S>(proto.zero_like(), gen, sup, tag, "family");
  }

  if (family == "staircase") {
    std::string sched_name = j.value("schedule", "m+1");
    std::function<long(long)> sched;
    if (sched_name == "m")
      sched = [](long m) { return m; };
    else if (sched_name == "m+1")
      sched = [](long m) { return m + 1; };
    else if (sched_name == "2ceil(m/2)")
      sched = [](long m) { return 2 * ((m + 1) / 2); };
    else
      throw ParseError("family json: unknown staircase schedule \"" + sched_name + "\"");
    S diag = parse_entry(j.at("diag"));
    std::vector<S> fill;
    if (j.contains("fill")) {
      if (j["fill"].is_array())
        for (const auto& e : j["fill"]) fill.push_back(parse_entry(e));
      else
        fill.push_back(parse_entry(j["fill"]));
    }
    auto gen = [sched, diag, fill, perturbed, proto](long i, long jj) {
      S v = proto.zero_like();
      if (i == jj)
        v = diag;
      else if (i > jj && i <= sched(jj) && !fill.empty())
        v = fill[static_cast<size_t>((i - jj - 1) % static_cast<long>(fill.size()))];
      return perturbed(i, jj, std::move(v));
    };
    auto sup = [sched, perturb_max_row](long jj) {
      return std::max(sched(jj), perturb_max_row);
    };
    return LazyMatrix<S>(proto.zero_like(), gen, sup, StructureTag::General, "family");
  }

  throw ParseError("family json: unknown family \"" + family + "\"");
}

}  // namespace

LazyMatrix<CycloNum> exact_family_from_json(const Json& j) {
  int k = read_k(j);
  auto field = CycloField::get(k);
  return family_from_json_impl<CycloNum>(j, CycloNum(field), [field](const Json& e) {
    if (!e.is_string()) throw ParseError("family json: exact entries must be strings");
    return CycloNum::parse(field, e.get<std::string>());
  });
}

LazyMatrix<FloatComplex> float_family_from_json(const Json& j) {
  int k = read_k(j);
  if (j.contains("eps")) FloatComplex::tolerance() = j["eps"].get<double>();
  return family_from_json_impl<FloatComplex>(j, FloatComplex::zero(k),
                                             [k](const Json& e) { return parse_float_entry(e, k); });
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid json in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace potentsum

#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "potentsum/certificate.hpp"
#include "potentsum/colfinite.hpp"
#include "potentsum/decompose.hpp"
#include "potentsum/floatcomplex.hpp"

namespace potentsum {

using Json = nlohmann::json;

// ---- matrices ----
// {"k": 3, "backend": "exact"|"float", "rows": n, "cols": n,
//  "entries": [["...", ...], ...]}  entries use the scalar text syntax; the
// float backend additionally accepts/produces {"re": x, "im": y} objects.

Json matrix_to_json(const Matrix<CycloNum>& m);
Json matrix_to_json(const Matrix<FloatComplex>& m);
Matrix<CycloNum> exact_matrix_from_json(const Json& j);
Matrix<FloatComplex> float_matrix_from_json(const Json& j);

using AnyMatrix = std::variant<Matrix<CycloNum>, Matrix<FloatComplex>>;
AnyMatrix matrix_from_json(const Json& j);  // dispatches on "backend"

// ---- certificates ----
// {"k":3,"coeffs":[4,0,10],"F1":14}; multiroot adds "a0" and
// "roots":[{"beta":...,"coeffs":[...]}]; signed certificates carry rational
// coefficient strings and "signed": true.

Json certificate_to_json(const TraceCertificate& c);
TraceCertificate certificate_from_json(const Json& j);
Json multiroot_to_json(const MultiRootCertificate& c);
MultiRootCertificate multiroot_from_json(const Json& j);
Json signed_certificate_to_json(const SignedCertificate& c);
SignedCertificate signed_certificate_from_json(const Json& j);

// ---- decompositions ----

Json decomposition_to_json(const Decomposition<CycloNum>& d, const VerifyReport* report = nullptr);
Json decomposition_to_json(const Decomposition<FloatComplex>& d,
                           const VerifyReport* report = nullptr);
using AnyDecomposition = std::variant<Decomposition<CycloNum>, Decomposition<FloatComplex>>;
AnyDecomposition decomposition_from_json(const Json& j);

// ---- lazy families ----
// {"family":"banded","k":3,"band":{"-1":"1","0":"5*w","1":"w^2"},
//  "perturb":[{"i":2,"j":5,"v":"7"}]}
// {"family":"diagonal","k":4,"value":"2*w"}
// {"family":"staircase","k":2,"schedule":"m"|"m+1"|"2ceil(m/2)","diag":"7",
//  "fill":["3","1"]}
// band values are a scalar string or an array cycled along the band.

LazyMatrix<CycloNum> exact_family_from_json(const Json& j);
LazyMatrix<FloatComplex> float_family_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace potentsum

#include "envlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace envlab {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Vector numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], where + "/" + std::to_string(i));
  return v;
}

}  // namespace

Json to_json(const Space& space) {
  Json j;
  j["n"] = space.n();
  if (space.finite_p()) {
    j["p"] = space.p();
  } else {
    j["p"] = "inf";
  }
  j["weights"] = to_json(space.weights());
  return j;
}

Space space_from_json(const Json& j) {
  const int n = integer(field(j, "n", "/"), "/n");
  if (n < 1) fail("/n", "n must be positive");
  const Json& pj = field(j, "p", "/");
  double p = 0.0;
  if (pj.is_string()) {
    const auto s = pj.get<std::string>();
    if (s != "inf" && s != "infinity") fail("/p", "expected a number or \"inf\"");
    p = kInfinity;
  } else {
    p = number(pj, "/p");
  }
  Vector w = Vector::Ones(n);
  if (j.contains("weights")) {
    w = numbers(j["weights"], "/weights");
    if (w.size() != n) fail("/weights", "expected " + std::to_string(n) + " weights");
  }
  try {
    return Space(w, p);
  } catch (const Error& e) {
    fail("/", e.what());
  }
}

Json to_json(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vector vector_from_json(const Json& j) { return numbers(j, "/"); }

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(to_json(Vector(m.row(i).transpose())));
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("/", "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string where = "/" + std::to_string(i);
    const Vector r = numbers(j[static_cast<std::size_t>(i)], where);
    if (i == 0) m.resize(rows, r.size());
    if (r.size() != m.cols()) fail(where, "ragged matrix");
    m.row(i) = r.transpose();
  }
  return m;
}

Json to_json(const Subspace& y) {
  Json basis = Json::array();
  for (const auto& v : y.basis_vectors()) basis.push_back(to_json(v));
  return Json{{"basis", basis}};
}

Subspace subspace_from_json(const Space& space, const Json& j) {
  const Json& basis = field(j, "basis", "/");
  if (!basis.is_array()) fail("/basis", "expected an array of vectors");
  Matrix g(space.n(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string where = "/basis/" + std::to_string(k);
    const Vector v = numbers(basis[k], where);
    if (v.size() != space.n()) fail(where, "expected " + std::to_string(space.n()) + " coordinates");
    g.col(static_cast<Eigen::Index>(k)) = v;
  }
  return Subspace::span(space, g);
}

Json to_json(const Partition& partition) {
  Json blocks = Json::array();
  for (const auto& b : partition.blocks()) {
    Json block = Json::array();
    for (int a : b) block.push_back(a + 1);
    blocks.push_back(block);
  }
  return Json{{"blocks", blocks}};
}

Partition partition_from_json(const Json& j) {
  const Json& blocks = field(j, "blocks", "/");
  if (!blocks.is_array()) fail("/blocks", "expected an array of blocks");
  std::vector<std::vector<int>> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string where = "/blocks/" + std::to_string(b);
    if (!blocks[b].is_array()) fail(where, "expected an array of atoms");
    std::vector<int> block;
    for (std::size_t k = 0; k < blocks[b].size(); ++k) {
      block.push_back(integer(blocks[b][k], where + "/" + std::to_string(k)) - 1);
    }
    out.push_back(std::move(block));
  }
  try {
    return Partition(std::move(out));
  } catch (const Error& e) {
    fail("/blocks", e.what());
  }
}

Json to_json(const SignedPermutation& g) {
  Json perm = Json::array();
  for (int i : g.perm()) perm.push_back(i + 1);
  return Json{{"perm", perm}, {"signs", g.signs()}};
}

SignedPermutation signed_permutation_from_json(const Json& j) {
  const Json& perm = field(j, "perm", "/");
  if (!perm.is_array()) fail("/perm", "expected an array");
  std::vector<int> p;
  for (std::size_t i = 0; i < perm.size(); ++i) p.push_back(integer(perm[i], "/perm/" + std::to_string(i)) - 1);
  std::vector<int> s(p.size(), 1);
  if (j.contains("signs")) {
    const Json& signs = j["signs"];
    if (!signs.is_array() || signs.size() != p.size()) fail("/signs", "expected one sign per atom");
    for (std::size_t i = 0; i < signs.size(); ++i) s[i] = integer(signs[i], "/signs/" + std::to_string(i));
  }
  try {
    return SignedPermutation(std::move(p), std::move(s));
  } catch (const Error& e) {
    fail("/", e.what());
  }
}

Json to_json(const ErgodicReport& report) {
  Json basis = Json::array();
  for (const auto& v : report.fixed_space.basis_vectors()) basis.push_back(to_json(v));
  return Json{{"projection", to_json(report.projection)},
              {"iterations", report.iterations},
              {"residual", report.residual},
              {"fixed_space_basis", basis},
              {"oracle_used", report.oracle_used},
              {"oracle_discrepancy", report.oracle_discrepancy},
              {"accelerated", report.accelerated}};
}

Json to_json(const ProjectionSearchResult& result) {
  return Json{{"best_projection", to_json(result.best_projection)},
              {"upper_bound", result.upper_bound},
              {"lower_bound", result.lower_bound},
              {"method", to_string(result.method)},
              {"restarts", result.restarts},
              {"seed", result.seed},
              {"exact", result.exact}};
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(origin + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace envlab

#include "quasilattice/serialize.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace quasilattice {

namespace {

Json float_row(const Eigen::VectorXd& v) {
  Json row = Json::array();
  for (Index i = 0; i < v.size(); ++i) row.push_back(round12(v(i)));
  return row;
}

// Any orthonormal frame will do; take the top n eigenvectors of the gram.
Eigen::MatrixXd embedding_from_gram(const GoldenMatrix& gram, int n) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_double(gram));
  const Index k = gram.rows();
  if (n < 1 || n > k) throw FormatError("n out of range");
  if (es.eigenvalues()(k - n) <= 1e-9) throw FormatError("gram has rank below n");
  Eigen::MatrixXd e(k, n);
  for (int a = 0; a < n; ++a) {
    const Index col = k - 1 - a;
    e.col(a) = es.eigenvectors().col(col) * std::sqrt(es.eigenvalues()(col));
  }
  return e;
}

Json int_vector(const IntVector& v) {
  Json row = Json::array();
  for (Index i = 0; i < v.size(); ++i) row.push_back(v(i).str());
  return row;
}

Json int_columns(const IntMatrix& m) {
  Json cols = Json::array();
  for (Index c = 0; c < m.cols(); ++c) cols.push_back(int_vector(m.col(c)));
  return cols;
}

template <class T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  if (std::abs(v) < 1e-12) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

Json to_json(const GoldenScalar& v) { return v.to_string(); }

Json to_json(const GoldenVector& v) {
  Json row = Json::array();
  for (Index i = 0; i < v.size(); ++i) row.push_back(v(i).to_string());
  return row;
}

Json to_json(const GoldenMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(GoldenVector(m.row(i).transpose())));
  return rows;
}

GoldenScalar golden_from_json(const Json& j) {
  try {
    if (j.is_string()) return GoldenScalar::parse(j.get<std::string>());
    if (j.is_number_integer()) return GoldenScalar(j.get<long long>());
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad exact value: ") + e.what());
  }
  throw FormatError("exact values must be strings or integers");
}

GoldenVector golden_vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of exact values");
  GoldenVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = golden_from_json(j[i]);
  return v;
}

GoldenMatrix golden_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("expected a nonempty matrix");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  GoldenMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw FormatError("ragged matrix");
    m.row(static_cast<Index>(i)) = golden_vector_from_json(j[i]).transpose();
  }
  return m;
}

Json cluster_to_json(const ClusterSpec& c) {
  Json j;
  j["name"] = c.name;
  j["k"] = c.k;
  j["n"] = c.n;
  j["gram"] = to_json(c.gram);
  Json gens = Json::array();
  for (const auto& g : c.generators) {
    Json perm = Json::array();
    for (int v : g.images()) perm.push_back(v + 1);
    gens.push_back({{"perm", perm}, {"signs", g.signs()}});
  }
  j["generators"] = gens;
  Json rels = Json::array();
  for (const auto& r : c.relations) rels.push_back({{"word", r.word}, {"power", r.power}});
  j["relations"] = rels;
  if (c.embedding) {
    Json rows = Json::array();
    for (Index i = 0; i < c.embedding->rows(); ++i)
      rows.push_back(float_row(c.embedding->row(i).transpose()));
    j["embedding"] = rows;
  }
  return j;
}

ClusterSpec cluster_from_json(const Json& j) {
  ClusterSpec c;
  c.name = require<std::string>(j, "name");
  c.k = require<int>(j, "k");
  c.n = require<int>(j, "n");
  if (!j.contains("gram")) throw FormatError("missing field 'gram'");
  c.gram = golden_matrix_from_json(j["gram"]);
  if (j.contains("generators")) {
    for (const auto& g : j["generators"]) {
      auto perm = require<std::vector<int>>(g, "perm");
      auto signs = require<std::vector<int>>(g, "signs");
      if (perm.size() != signs.size()) throw FormatError("perm and signs differ in length");
      for (int& v : perm) --v;
      c.generators.emplace_back(std::move(perm), std::move(signs));
    }
  }
  if (j.contains("relations"))
    for (const auto& r : j["relations"])
      c.relations.push_back({require<std::string>(r, "word"), require<int>(r, "power")});
  if (j.contains("embedding")) {
    const auto rows = j["embedding"].get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd e(static_cast<Index>(rows.size()), c.n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != c.n) throw FormatError("embedding rows must have n entries");
      for (int a = 0; a < c.n; ++a) e(static_cast<Index>(i), a) = rows[i][static_cast<std::size_t>(a)];
    }
    c.embedding = e;
  } else {
    c.embedding = embedding_from_gram(c.gram, c.n);
  }
  const ValidationReport rep = validate(c);
  if (!rep.ok()) throw FormatError("invalid cluster '" + c.name + "': " + rep.issues.front());
  return c;
}

ClusterSpec load_cluster_file(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return cluster_from_json(j);
}

Json pattern_to_json(const Pattern& p) { return pattern_to_json(p, neighbor_graph(p)); }

Json pattern_to_json(const Pattern& p, const NeighborGraph& g) {
  Json j;
  j["cluster"] = p.cluster;
  j["k"] = p.k;
  j["n"] = p.n;
  j["gamma"] = to_json(p.shift);
  j["radius"] = to_string(p.radius);
  j["kappa_float"] = round12(p.kappa);
  Json emb = Json::array();
  for (Index i = 0; i < p.embedding.rows(); ++i)
    emb.push_back(float_row(p.embedding.row(i).transpose()));
  j["embedding"] = emb;
  Json pts = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    pts.push_back({{"lattice", p.points[i].lattice},
                   {"phys", float_row(p.phys(i))},
                   {"boundary", p.points[i].boundary}});
  j["points"] = pts;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.from, e.to, e.label}));
  j["edges"] = edges;
  return j;
}

Pattern pattern_from_json(const Json& j) {
  Pattern p;
  p.cluster = require<std::string>(j, "cluster");
  p.k = require<int>(j, "k");
  p.n = require<int>(j, "n");
  if (!j.contains("gamma")) throw FormatError("missing field 'gamma'");
  p.shift = golden_vector_from_json(j["gamma"]);
  try {
    p.radius = parse_rational(require<std::string>(j, "radius"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("radius: ") + e.what());
  }
  p.kappa = require<double>(j, "kappa_float");
  const auto emb = require<std::vector<std::vector<double>>>(j, "embedding");
  p.embedding = Eigen::MatrixXd::Zero(p.k, p.n);
  for (std::size_t i = 0; i < emb.size() && static_cast<int>(i) < p.k; ++i)
    for (std::size_t a = 0; a < emb[i].size() && static_cast<int>(a) < p.n; ++a)
      p.embedding(static_cast<Index>(i), static_cast<Index>(a)) = emb[i][a];
  for (const auto& q : require<Json>(j, "points")) {
    PatternPoint pt{require<LatticePoint>(q, "lattice"), require<bool>(q, "boundary")};
    if (static_cast<int>(pt.lattice.size()) != p.k) throw FormatError("lattice point of wrong length");
    p.points.push_back(std::move(pt));
  }
  p.canonicalize();
  return p;
}

bool same_pattern(const Pattern& a, const Pattern& b) {
  if (a.cluster != b.cluster || a.k != b.k || a.n != b.n || a.radius != b.radius ||
      a.shift.size() != b.shift.size() || a.size() != b.size())
    return false;
  for (Index i = 0; i < a.shift.size(); ++i)
    if (!(a.shift(i) == b.shift(i))) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.points[i].lattice != b.points[i].lattice ||
        a.points[i].boundary != b.points[i].boundary)
      return false;
  return true;
}

Json surface_to_json(const AtomicSurface& s) {
  Json j;
  j["dim"] = s.dim;
  j["has_interior"] = s.has_interior();
  Json verts = Json::array();
  for (const auto& v : s.vertices) verts.push_back(to_json(v));
  j["vertices"] = verts;
  j["halfspaces"] = s.hrep.slabs.size();
  return j;
}

Json reduction_to_json(const std::string& cluster, const ReducedScheme& r) {
  const ProjectorSet& p = r.projectors;
  Json j;
  j["cluster"] = cluster;
  j["gamma"] = to_json(r.shift);
  j["n"] = p.n;
  j["s"] = p.s;
  j["d"] = p.d;
  j["rho_sq"] = to_json(p.rho_sq);
  j["kappa_sq"] = to_json(p.kappa_sq);
  j["pi"] = to_json(p.pi);
  j["pi_perp"] = to_json(p.pi_perp);
  j["pi_prime"] = to_json(p.pi_prime);
  j["pi_dprime"] = to_json(p.pi_dprime);
  j["image_lattice"] = {{"denominator", r.calL.lattice.denominator().str()},
                        {"basis", int_columns(r.calL.lattice.basis())}};
  j["kernel_lattice"] = {{"basis", int_columns(r.L.basis())}};
  j["index"] = r.index.str();
  j["cosets"] = r.cosets.size();
  j["m"] = r.m;
  Json slices = Json::array();
  for (const auto& c : r.cosets) {
    Json s = surface_to_json(c.surface);
    Json entry;
    entry["t"] = int_vector(c.t);
    entry["z"] = int_vector(c.z);
    entry["offset"] = to_json(c.offset);
    for (auto& [key, value] : s.items()) entry[key] = value;
    slices.push_back(entry);
  }
  j["slices"] = slices;
  return j;
}

Json occupancy_to_json(const OccupancyStats& st) {
  Json j;
  j["radius"] = to_string(st.radius);
  j["counted"] = st.counted;
  j["histogram"] = st.histogram;
  j["fully_occupied_fraction"] = to_string(st.fully_occupied_fraction);
  j["fully_occupied_float"] = round12(st.fully_occupied_fraction.convert_to<double>());
  Json shells = Json::array();
  for (std::size_t i = 0; i < st.shells.size(); ++i) {
    std::vector<int> idx;
    for (int v : st.shells[i]) idx.push_back(v + 1);
    shells.push_back({{"indices", idx},
                      {"full_fraction", to_string(st.shell_full_fraction[i])},
                      {"full_float", round12(st.shell_full_fraction[i].convert_to<double>())}});
  }
  j["shells"] = shells;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace quasilattice

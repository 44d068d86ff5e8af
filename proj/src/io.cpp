#include "keyforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "keyforge/error.hpp"

namespace keyforge {
namespace {

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DataError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("field \"") + key + "\" has the wrong type");
  }
}

Eigen::MatrixXd matrix_field(const Json& j, const char* key, Eigen::Index rows, Eigen::Index cols) {
  const auto data = field<std::vector<std::vector<double>>>(j, key);
  if (static_cast<Eigen::Index>(data.size()) != rows) throw DataError(std::string("\"") + key + "\" has the wrong shape");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(data[i].size()) != cols) throw DataError(std::string("\"") + key + "\" has the wrong shape");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = data[i][k];
  }
  if (!m.allFinite()) throw DataError(std::string("\"") + key + "\" has non-finite entries");
  return m;
}

Eigen::VectorXd vector_field(const Json& j, const char* key, Eigen::Index size) {
  const auto data = field<std::vector<double>>(j, key);
  if (static_cast<Eigen::Index>(data.size()) != size) throw DataError(std::string("\"") + key + "\" has the wrong length");
  return Eigen::Map<const Eigen::VectorXd>(data.data(), size);
}

Alphabet alphabet_field(const Json& j) { return Alphabet(field<std::string>(j, "alphabet")); }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Json to_json(const BigramCounts& counts) {
  Json j;
  j["alphabet"] = counts.alphabet.letters();
  j["counts"] = matrix_json(counts.counts);
  return j;
}

BigramCounts counts_from_json(const Json& j) {
  const Alphabet a = alphabet_field(j);
  const auto n = static_cast<Eigen::Index>(a.size());
  BigramCounts c{a, matrix_field(j, "counts", n, n)};
  if ((c.counts.array() < 0.0).any()) throw DataError("negative bigram count");
  return c;
}

Json to_json(const TransitionModel& model) {
  Json j;
  j["alphabet"] = model.alphabet.letters();
  j["P"] = matrix_json(model.P);
  j["pi"] = vector_json(model.pi);
  return j;
}

TransitionModel model_from_json(const Json& j) {
  const Alphabet a = alphabet_field(j);
  const auto n = static_cast<Eigen::Index>(a.size());
  TransitionModel m{a, matrix_field(j, "P", n, n), vector_field(j, "pi", n)};
  validate_model(m);
  return m;
}

Json to_json(const OptimizerConfig& cfg) {
  Json j;
  j["d_min"] = cfg.d_min;
  j["c"] = cfg.c;
  j["alpha"] = cfg.alpha;
  j["max_iters"] = cfg.max_iters;
  j["step_size"] = cfg.step_size;
  j["tolerance"] = cfg.tolerance;
  return j;
}

OptimizerConfig config_from_json(const Json& j) {
  OptimizerConfig cfg;
  cfg.d_min = field<double>(j, "d_min");
  cfg.c = field<double>(j, "c");
  cfg.alpha = field<double>(j, "alpha");
  cfg.max_iters = field<int>(j, "max_iters");
  cfg.step_size = field<double>(j, "step_size");
  cfg.tolerance = field<double>(j, "tolerance");
  cfg.validate();
  return cfg;
}

Json to_json(const DistanceMatrix& d) {
  Json j;
  j["alphabet"] = d.alphabet.letters();
  j["d"] = matrix_json(d.d);
  j["config"] = to_json(d.config);
  return j;
}

DistanceMatrix distances_from_json(const Json& j) {
  const Alphabet a = alphabet_field(j);
  const auto n = static_cast<Eigen::Index>(a.size());
  DistanceMatrix d{a, matrix_field(j, "d", n, n), config_from_json(field<Json>(j, "config"))};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d.d(i, i) != 0.0) throw DataError("distance matrix has a nonzero diagonal");
    for (Eigen::Index k = 0; k < n; ++k)
      if (d.d(i, k) != d.d(k, i) || d.d(i, k) < 0.0) throw DataError("distance matrix must be symmetric and nonnegative");
  }
  return d;
}

Json to_json(const Embedding2D& emb) {
  Json j;
  j["alphabet"] = emb.alphabet.letters();
  j["points"] = matrix_json(emb.points);
  j["stress"] = emb.stress;
  return j;
}

Embedding2D embedding_from_json(const Json& j) {
  const Alphabet a = alphabet_field(j);
  return {a, matrix_field(j, "points", static_cast<Eigen::Index>(a.size()), 2), field<double>(j, "stress")};
}

Json to_json(const Partition& p, double objective) {
  Json j;
  j["alphabet"] = p.alphabet().letters();
  j["A"] = p.letters_a();
  j["B"] = p.letters_b();
  j["objective"] = objective;
  return j;
}

Partition partition_from_json(const Json& j) {
  const Alphabet a = alphabet_field(j);
  const auto A = field<std::string>(j, "A");
  const auto B = field<std::string>(j, "B");
  Partition p = Partition::from_letters(a, A);
  if (A.size() + B.size() != a.size() || p.letters_b().size() != B.size())
    throw DataError("partition clusters do not cover the alphabet");
  for (char ch : B)
    if (p.in_a(a.require_index(ch))) throw DataError("letter in both clusters");
  return p;
}

Json to_json(const KeyboardLayout& layout) {
  Json j;
  j["alphabet"] = layout.alphabet.letters();
  j["grid"] = {{"rows", layout.grid.rows}, {"cols", layout.grid.cols}};
  Json keys = Json::object();
  for (std::size_t i = 0; i < layout.keys.size(); ++i)
    keys[std::string(1, layout.alphabet[i])] = {layout.keys[i].row, layout.keys[i].col};
  j["keys"] = std::move(keys);
  return j;
}

KeyboardLayout layout_from_json(const Json& j) {
  const auto grid_json = field<Json>(j, "grid");
  const KeyGrid grid{field<int>(grid_json, "rows"), field<int>(grid_json, "cols")};
  const auto keys = field<Json>(j, "keys");
  if (!keys.is_object()) throw DataError("\"keys\" must be an object");
  std::string letters;
  if (j.contains("alphabet")) {
    letters = field<std::string>(j, "alphabet");
  } else {
    for (const auto& [k, v] : keys.items()) letters += k;
  }
  KeyboardLayout layout{Alphabet(letters), grid, {}};
  if (keys.size() != layout.alphabet.size()) throw DataError("layout keys do not match the alphabet");
  for (std::size_t i = 0; i < layout.alphabet.size(); ++i) {
    const std::string name(1, layout.alphabet[i]);
    const auto cell = field<std::vector<int>>(keys, name.c_str());
    if (cell.size() != 2) throw DataError("key cell must be [row, col]");
    layout.keys.push_back({cell[0], cell[1]});
  }
  layout.validate();
  return layout;
}

Json to_json(const BenchReport& report) {
  Json j;
  j["layout"] = report.layout_id;
  j["letters"] = report.letters;
  j["total"] = report.total;
  j["per_transition"] = report.per_transition;
  return j;
}

Json to_json(const EllipseSpec& e) {
  Json j;
  j["center"] = {e.center(0), e.center(1)};
  j["semi_axes"] = {e.semi_major, e.semi_minor};
  j["angle"] = e.angle;
  j["area"] = e.area;
  return j;
}

std::string curvature_csv(const CurvatureReport& report) {
  std::string out = "letter,k,kappa_min,kappa_max,gauss\n";
  for (const auto& e : report.entries) {
    out += report.alphabet[static_cast<std::size_t>(e.letter)];
    out += "," + std::to_string(e.k) + "," + format_double(e.kappa_min) + "," +
           format_double(e.kappa_max) + "," + format_double(e.gauss) + "\n";
  }
  return out;
}

std::string curvature_mean_csv(const CurvatureReport& report) {
  std::string out = "letter,gauss_mean\n";
  for (std::size_t i = 0; i < report.alphabet.size(); ++i) {
    out += report.alphabet[i];
    out += "," + format_double(report.mean_gauss(static_cast<Eigen::Index>(i))) + "\n";
  }
  return out;
}

}  // namespace keyforge

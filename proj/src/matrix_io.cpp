#include "gruss/matrix_io.hpp"

#include <fstream>

#include <json.hpp>

namespace gruss {

namespace {

using nlohmann::ordered_json;

Matrix from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re")) {
    throw InvalidConfig("matrix JSON: expected an object with fields \"n\" and \"re\"");
  }
  const int n = j.at("n").get<int>();
  if (n < 1) {
    throw InvalidConfig("matrix JSON: n must be >= 1");
  }
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  const auto& im = has_im ? j.at("im") : nlohmann::json();
  if (static_cast<int>(re.size()) != n || (has_im && static_cast<int>(im.size()) != n)) {
    throw InvalidConfig("matrix JSON: row count does not match n");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row_re = re.at(static_cast<size_t>(i));
    if (static_cast<int>(row_re.size()) != n) {
      throw InvalidConfig("matrix JSON: re row " + std::to_string(i) + " has wrong length");
    }
    for (int k = 0; k < n; ++k) {
      double x = row_re.at(static_cast<size_t>(k)).get<double>();
      double y = 0.0;
      if (has_im) {
        const auto& row_im = im.at(static_cast<size_t>(i));
        if (static_cast<int>(row_im.size()) != n) {
          throw InvalidConfig("matrix JSON: im row " + std::to_string(i) + " has wrong length");
        }
        y = row_im.at(static_cast<size_t>(k)).get<double>();
      }
      m(i, k) = Complex(x, y);
    }
  }
  if (!all_finite(m)) {
    throw InvalidConfig("matrix JSON: non-finite entries");
  }
  return m;
}

ordered_json to_json(const Matrix& m) {
  const Eigen::Index n = m.rows();
  ordered_json j;
  j["n"] = n;
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  bool any_im = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    ordered_json row_re = ordered_json::array();
    ordered_json row_im = ordered_json::array();
    for (Eigen::Index k = 0; k < n; ++k) {
      row_re.push_back(m(i, k).real());
      row_im.push_back(m(i, k).imag());
      any_im = any_im || m(i, k).imag() != 0.0;
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  j["re"] = std::move(re);
  if (any_im) j["im"] = std::move(im);
  return j;
}

}  // namespace

Matrix read_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidConfig("cannot open matrix file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("matrix JSON parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

void write_matrix_json(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidConfig("cannot open output file: " + path);
  }
  out << to_json(m).dump(2) << "\n";
}

std::string matrix_to_json_string(const Matrix& m) { return to_json(m).dump(2); }

Matrix matrix_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("matrix JSON parse error: ") + e.what());
  }
  return from_json(j);
}

}  // namespace gruss

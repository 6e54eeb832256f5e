#include <doctest.h>

#include "gruss/matrix_io.hpp"
#include "gruss/random_instances.hpp"

using namespace gruss;

TEST_CASE("matrix JSON round trip") {
  const Matrix m = gen_complex(3, 111, 1.5);
  const Matrix back = matrix_from_json_string(matrix_to_json_string(m));
  CHECK((back - m).norm() <= 1e-15 * m.norm());
}

TEST_CASE("missing im means a real matrix") {
  const Matrix m = matrix_from_json_string(R"({"n":2,"re":[[1,2],[3,4]]})");
  CHECK(m(0, 1) == Complex(2.0, 0.0));
  CHECK(m(1, 0).imag() == 0.0);
  // a purely real matrix omits "im" on write
  CHECK(matrix_to_json_string(m).find("\"im\"") == std::string::npos);
}

TEST_CASE("matrix JSON rejects malformed input") {
  CHECK_THROWS_AS(matrix_from_json_string("not json"), InvalidConfig);
  CHECK_THROWS_AS(matrix_from_json_string(R"({"n":2,"re":[[1,2]]})"), InvalidConfig);
  CHECK_THROWS_AS(matrix_from_json_string(R"({"n":2,"re":[[1],[2]]})"), InvalidConfig);
  CHECK_THROWS_AS(matrix_from_json_string(R"({"re":[[1]]})"), InvalidConfig);
  CHECK_THROWS_AS(matrix_from_json_string(R"({"n":0,"re":[]})"), InvalidConfig);
}

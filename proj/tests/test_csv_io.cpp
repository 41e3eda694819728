#include <sstream>
#include <string>

#include "doctest.h"
#include "logmeans/analysis.hpp"
#include "logmeans/csv_io.hpp"

using namespace logmeans;

TEST_CASE("format_real round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("csv table") {
  CsvTable t({"n", "value", "tag"});
  t.row().add(3).add(0.5).add(std::string("LR"));
  t.row().add(std::int64_t{4}).add(1e-20).add(std::string("L"));
  std::ostringstream os;
  t.write(os);
  CHECK(os.str() == "n,value,tag\n3,0.5,LR\n4,9.9999999999999995e-21,L\n");

  CsvTable empty({"a"});
  std::ostringstream eos;
  empty.write(eos);
  CHECK(eos.str() == "a\n");

  CsvTable bad({"a", "b"});
  bad.row().add(1);
  std::ostringstream bos;
  CHECK_THROWS(bad.write(bos));
  CHECK_THROWS(t.row().add(std::string("x,y")));
  CHECK_THROWS(CsvTable({}));
  CHECK_THROWS(t.write_file("/nonexistent-dir/out.csv"));
}

TEST_CASE("coefficient grids round-trip bit-exactly") {
  const auto g = random_real_trig({3, 2}, 4);
  std::stringstream ss;
  write_coefficients_csv(ss, g);
  const auto back = read_coefficients_csv(ss, true);
  CHECK(back.degrees() == g.degrees());
  CHECK(back.real());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back.data()[i] == g.data()[i]);
}

TEST_CASE("sampled fields round-trip bit-exactly") {
  const auto f = synthesize(random_real_trig({3, 2}, 5), {8, 6});
  std::stringstream ss;
  write_field_csv(ss, f);
  const auto back = read_field_csv(ss);
  CHECK(back.resolution() == f.resolution());
  CHECK(back.real());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back.samples()[i] == f.samples()[i]);
}

TEST_CASE("malformed csv is rejected") {
  auto read_coeffs = [](const std::string& text) {
    std::istringstream is(text);
    return read_coefficients_csv(is);
  };
  CHECK_THROWS(read_coeffs(""));
  CHECK_THROWS(read_coeffs("j0,re\n0,1\n"));
  CHECK_THROWS(read_coeffs("x0,re,im\n0,1,0\n"));
  CHECK_THROWS(read_coeffs("j0,re,im\n"));
  CHECK_THROWS(read_coeffs("j0,re,im\n0,1,0\n1,1,0\n"));
  CHECK_THROWS(read_coeffs("j0,re,im\n0,1,0\n0,1,0\n-1,0,0\n"));
  CHECK_THROWS(read_coeffs("j0,re,im\n0,abc,0\n"));
  CHECK_THROWS(read_coeffs("j0,re,im\n0,1\n"));
  std::istringstream neg("k0,re,im\n-1,1,0\n");
  CHECK_THROWS(read_field_csv(neg));
  std::istringstream ok("k0,re,im\n1,2,0\n0,1,0.5\n");
  const auto f = read_field_csv(ok);
  CHECK_FALSE(f.real());
  CHECK(f.samples()[1] == Complex(2.0, 0.0));
}

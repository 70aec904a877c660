#include "doctest.h"

#include "robin_fsi/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace robin_fsi;

namespace {

template <class F>
std::string render(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

RateTable sample_table() {
  RateTable t;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  t.rows.push_back({0, 0.02, 0.25, 1e-4, 0.05, 0.06, 0.009, nan, nan, nan, 4.6});
  t.rows.push_back({1, 0.01, 0.125, 1e-4, 0.0125, 0.013, 0.0011, 2.0, 2.2, 3.0, 2.1});
  return t;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1.000000000e+00");
  CHECK(format_number(-2.5e-7) == "-2.500000000e-07");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("empty inputs give header-only files") {
  CHECK(render([](auto& os) { write_rate_table(os, RateTable{}); }) ==
        "level,tau,h,eps,err_eta,err_xi,err_u,rate_eta,rate_xi,rate_u,avg_subiters\n");
  CHECK(lines(render([](auto& os) { write_qoi(os, {}); })) == 2);
  CHECK(render([](auto& os) { write_discrepancy(os, {}); }) == "scheme,reference,t,flowrate,pressure_centerline,disp_mag\n");
  CHECK(lines(render([](auto& os) { write_iterations(os, {}); })) == 1);
  CHECK(lines(render([](auto& os) { write_stability(os, {}); })) == 1);
  CHECK(render([](auto& os) { write_energy(os, {}); }) == "theta,tau,level,E,D,N\n");
}

TEST_CASE("rate table rows") {
  const std::string s = render([](auto& os) { write_rate_table(os, sample_table()); });
  CHECK(lines(s) == 3);
  CHECK(s.find("\n0,2.000000000e-02,2.500000000e-01,1.000000000e-04,5.000000000e-02,6.000000000e-02,"
               "9.000000000e-03,nan,nan,nan,4.600000000e+00\n") != std::string::npos);
  CHECK(s.find('\r') == std::string::npos);
}

TEST_CASE("qoi rows are ordered by series, time and station") {
  QoISeries q;
  q.scheme = "alg1";
  q.times = {0.004, 0.008};
  q.x = {1.0, 2.0};
  q.flowrate = {{1, 2}, {3, 4}};
  q.pressure = {{5, 6}, {7, 8}};
  q.disp = {{9, 10}, {11, 12}};
  const std::string s = render([&](auto& os) { write_qoi(os, {q}); });
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);
  CHECK(line[0] == '#');
  std::getline(in, line);
  CHECK(line == "t,x,flowrate,pressure_centerline,disp_mag,scheme");
  std::getline(in, line);
  CHECK(line == "4.000000000e-03,1.000000000e+00,1.000000000e+00,5.000000000e+00,9.000000000e+00,alg1");
  std::getline(in, line);
  CHECK(line.rfind("4.000000000e-03,2.000000000e+00,2.", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("8.000000000e-03,1.000000000e+00,3.", 0) == 0);
}

TEST_CASE("other tables") {
  const std::string it = render([](auto& os) {
    write_iterations(os, {{"rn", 0.01, 0.125, 1e-3, 50.05, 6.0, 140, 30, true, ""},
                          {"rr", 0.01, 0.0625, 1e-3, 50.05, 0.0, 400, 3, false, "did not converge"}});
  });
  CHECK(it.find("\nrn,1.000000000e-02,1.250000000e-01,1.000000000e-03,5.005000000e+01,6.000000000e+00,140,30,1,\n") !=
        std::string::npos);
  CHECK(it.find(",0,did not converge\n") != std::string::npos);
  const std::string st = render([](auto& os) {
    write_stability(os, {{0.75, 0.02, 200, 1.0, 0.5, 0.3, 0.1, -0.1, -0.1, 1.0, true}});
  });
  CHECK(st.find("\n7.500000000e-01,2.000000000e-02,200,") != std::string::npos);
  CHECK(st.substr(st.size() - 3) == ",1\n");
}

TEST_CASE("identical inputs give byte-identical files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "robin_fsi_report_test";
  fs::create_directories(dir);
  const std::string text = render([](auto& os) { write_rate_table(os, sample_table()); });
  write_file((dir / "a.csv").string(), text);
  write_file((dir / "b.csv").string(), render([](auto& os) { write_rate_table(os, sample_table()); }));
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv") == text);
  CHECK_THROWS(write_file((dir / "missing" / "x.csv").string(), text));
  fs::remove_all(dir);
}

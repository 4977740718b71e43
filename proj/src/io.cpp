#include "gapcert/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gapcert/errors.hpp"

namespace gapcert::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_deviation_curve_csv(std::ostream& os, const stats::TailCurve& curve) {
  os << "a,p_hat,wilson_upper,bound_raw,bound_clipped,regime\n";
  for (const auto& pt : curve) {
    os << format_double(pt.a) << ',' << format_double(pt.p_hat) << ','
       << format_double(pt.wilson_upper) << ',' << format_double(pt.bound_raw)
       << ',' << format_double(pt.bound_clipped) << ','
       << regime_name(pt.regime) << '\n';
  }
}

void write_observable_csv(std::ostream& os, const cube::DenseObservable& f) {
  os << "vertex_index,value\n";
  for (cube::Vertex v = 0; v < f.values.size(); ++v) {
    os << v << ',' << format_double(f.values[v]) << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const bernoulli::Histogram& h) {
  os << "bin_left,bin_right,mass\n";
  for (std::size_t b = 0; b < h.mass.size(); ++b) {
    os << format_double(h.bin_left[b]) << ',' << format_double(h.bin_right[b])
       << ',' << format_double(h.mass[b]) << '\n';
  }
}

namespace {

nlohmann::json parse(const std::string& text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  require(!j.is_discarded(), "PARSE", std::string("invalid JSON for ") + what);
  return j;
}

}  // namespace

doeblin::FiniteKernel read_kernel_json(const std::string& text) {
  const nlohmann::json j = parse(text, "kernel");
  require(j.contains("size") && j["size"].is_number_integer(), "PARSE",
          "kernel JSON needs an integer \"size\"");
  require(j.contains("rows") && j["rows"].is_array(), "PARSE",
          "kernel JSON needs a \"rows\" array");
  const int size = j["size"].get<int>();
  std::vector<double> rows;
  for (const auto& entry : j["rows"]) {
    if (entry.is_array()) {
      for (const auto& v : entry) rows.push_back(v.get<double>());
    } else {
      rows.push_back(entry.get<double>());
    }
  }
  return doeblin::make_kernel(size, std::move(rows));
}

doeblin::FiniteKernel read_kernel_file(const std::string& path) {
  return read_kernel_json(read_text_file(path));
}

bernoulli::StepFunction read_step_function_json(const std::string& text) {
  const nlohmann::json j = parse(text, "step function");
  require(j.contains("breakpoints") && j["breakpoints"].is_array(), "PARSE",
          "step-function JSON needs a \"breakpoints\" array");
  require(j.contains("values") && j["values"].is_array(), "PARSE",
          "step-function JSON needs a \"values\" array");
  return bernoulli::make_step(j["breakpoints"].get<std::vector<double>>(),
                              j["values"].get<std::vector<double>>());
}

bernoulli::StepFunction read_step_function_file(const std::string& path) {
  return read_step_function_json(read_text_file(path));
}

std::string step_function_to_json(const bernoulli::StepFunction& f) {
  std::ostringstream os;
  os << "{\"breakpoints\":[";
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    if (i) os << ',';
    os << format_double(f.breakpoints[i]);
  }
  os << "],\"values\":[";
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (i) os << ',';
    os << format_double(f.values[i]);
  }
  os << "]}";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "PARSE", "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "PARSE", "cannot open file for writing: " + path);
  out << content;
  require(out.good(), "PARSE", "write failed: " + path);
}

}  // namespace gapcert::io

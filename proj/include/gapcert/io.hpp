#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gapcert/bernoulli.hpp"
#include "gapcert/doeblin.hpp"
#include "gapcert/hypercube.hpp"
#include "gapcert/stats.hpp"

namespace gapcert::io {

// Floating-point rendering used in every emitted file: 17 significant
// digits, '.' decimal separator regardless of locale.
std::string format_double(double x);

void write_deviation_curve_csv(std::ostream& os, const stats::TailCurve& curve);

void write_observable_csv(std::ostream& os, const cube::DenseObservable& f);

void write_histogram_csv(std::ostream& os, const bernoulli::Histogram& h);

// {"size": k, "rows": [...]} with rows either flat row-major or nested.
doeblin::FiniteKernel read_kernel_json(const std::string& text);
doeblin::FiniteKernel read_kernel_file(const std::string& path);

// {"breakpoints": [...], "values": [...]}.
bernoulli::StepFunction read_step_function_json(const std::string& text);
bernoulli::StepFunction read_step_function_file(const std::string& path);

std::string step_function_to_json(const bernoulli::StepFunction& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gapcert::io

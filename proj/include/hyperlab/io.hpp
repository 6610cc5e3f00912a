#pragma once

#include <string>

#include "hyperlab/semigroup.hpp"

namespace hyperlab {

// --- JSON encodings ---------------------------------------------------------
// Matrices carry their field; complex entries are [re, im] pairs, real
// entries plain numbers.  Windows are {"axes": [[lo, hi], ...]}.

json mat_to_json(const Mat& A);
Mat mat_from_json(const json& j);

json window_to_json(const Window& w);
Window window_from_json(const json& j);
json cwindow_to_json(const CWindow& w);
CWindow cwindow_from_json(const json& j);

json partition_to_json(const Partition& eta);
Partition partition_from_json(const json& j);

json normal_form_to_json(const NormalForm& nf);
json report_to_json(const CoverageReport& r);

json sample_to_json(const PointSample& s, size_t max_points = 250000);
// Metadata columns first, then coordinates, then any intrinsic (aux)
// coordinates; floats are round-trip exact.
std::string sample_to_csv(const PointSample& s);

// --- descriptors ------------------------------------------------------------
// Point-set descriptor: {"kind": "A_alpha" | "A_alpha_beta" | "A2" | "B" |
// "Z_module" | "G_theta", ...parameters}.  Produces the sample; parameters
// are echoed into sample.params.
PointSample sample_from_descriptor(const json& j);

// {"field": "R"|"C", "generators": [entries, ...], "abelian": bool
//  (default true: commutation is then verified), "exact_generators":
//  optional rational entries as strings}
MatrixSemigroup semigroup_from_json(const json& j);
json semigroup_to_json(const MatrixSemigroup& G);

// --- report envelope --------------------------------------------------------

extern const char* kReportSchema;   // "hyperlab-report/1"
extern const char* kToolVersion;

// {"schema", "tool", "config", "result"}; config must already be resolved
// (defaults filled in) so a report alone reproduces the run.
json report_envelope(json config, json result);

// Write-temporary-then-rename so readers never observe partial files.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace hyperlab

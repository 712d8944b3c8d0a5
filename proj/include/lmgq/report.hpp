// report.hpp — converts experiment results into plot-ready OutputTables with
// fixed column orders and reproducibility metadata.

#pragma once

#include "lmgq/experiments.hpp"
#include "lmgq/spectral.hpp"
#include "lmgq/tables.hpp"

#include <vector>

namespace lmgq {

OutputTable levels_table(const std::vector<std::pair<Parity, LevelCurves>>& curves, int n);
OutputTable curvature_table(const std::vector<std::pair<Parity, LevelCurves>>& curves, int n);

OutputTable density_table(const DensityProfile& profile, const char* name, int n, double alpha);

OutputTable strength_table(const StrengthProfile& profile, const QuenchDecomposition& dec);
OutputTable series_table(const DecoherenceSeries& series, const QuenchDecomposition& dec);

OutputTable scan_table(const ScanResult& scan, const ScanFixed& fixed);
OutputTable nm_table(const ScanResult& scan, const ScanFixed& fixed);
OutputTable scaling_table(const SizeScalingResult& scaling, double lambda, const ScanFixed& fixed);
OutputTable locus_table(const LocusResult& locus, const ScanFixed& fixed);
OutputTable heatmap_table(const HeatmapResult& heatmap, const ScanFixed& fixed);
OutputTable heatmap_rowmax_table(const HeatmapResult& heatmap, const ScanFixed& fixed);

} // namespace lmgq

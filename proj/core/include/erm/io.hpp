#pragma once

#include <erm/density.hpp>
#include <erm/geometry.hpp>
#include <erm/matrix_build.hpp>
#include <erm/nonherm.hpp>

#include <filesystem>

namespace erm::io {

inline constexpr const char* kCsvHeader = "# erm-spectra v0.1.0";

// cloud as CSV x,y,z (+ JSON sidecar written separately by the CLI)
void write_cloud_csv(const std::filesystem::path& path, const geometry::PointCloud& cloud);
geometry::PointCloud read_cloud_csv(const std::filesystem::path& path);

// binary matrix container: magic "ERMMAT01", u32 header length, JSON header
// (n, kernel, u, hermitian), then row-major complex128 payload
void write_matrix(const std::filesystem::path& path, const matrix::ErmMatrix& m);
matrix::ErmMatrix read_matrix(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const CMatrix& m);

// eigenvalues as CSV re,im
void write_eigenvalues_csv(const std::filesystem::path& path, const std::vector<cplx>& ev,
                           const std::vector<double>* ipr = nullptr);
std::vector<cplx> read_eigenvalues_csv(const std::filesystem::path& path);

// density table: bin_center[, bin_center_im], p, stderr
void write_density_csv(const std::filesystem::path& path, const oracle::DensityEstimate& d);
// generic columns table
void write_table_csv(const std::filesystem::path& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);
// borderline as JSON {method, params, components: [[[re, im], ...], ...]}
void write_borderline_json(const std::filesystem::path& path, const nonherm::Borderline& b);
nonherm::Borderline read_borderline_json(const std::filesystem::path& path);

}  // namespace erm::io

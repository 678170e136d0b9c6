#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace specrp {

// Paired probe/response record: probes alpha_n (strictly positive) and
// responses beta_n (nonnegative in clean data; noisy responses may go
// negative and are stored as-is).
struct ProbeResponseDataset {
  int num_epochs = 0;  // N
  int dim = 0;         // m
  std::vector<Eigen::VectorXd> probes;
  std::vector<Eigen::VectorXd> responses;

  // Throws std::invalid_argument on dimension mismatch, non-positive probe
  // entries, or negative responses (unless allow_negative_responses).
  void validate(bool allow_negative_responses = false) const;
};

// CSV with header epoch,alpha_1..alpha_m,beta_1..beta_m, one row per epoch.
// Values are written with 17 significant digits so write/read round-trips
// are bit-exact.
void write_dataset_csv(const ProbeResponseDataset& data,
                       const std::string& path);
ProbeResponseDataset read_dataset_csv(const std::string& path);

std::string dataset_to_csv(const ProbeResponseDataset& data);
ProbeResponseDataset dataset_from_csv(const std::string& text);

}  // namespace specrp

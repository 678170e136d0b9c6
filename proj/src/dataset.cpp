#include "specrp/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specrp {

void ProbeResponseDataset::validate(bool allow_negative_responses) const {
  if (num_epochs < 1) throw std::invalid_argument("dataset: N must be >= 1");
  if (dim < 1) throw std::invalid_argument("dataset: m must be >= 1");
  if (static_cast<int>(probes.size()) != num_epochs ||
      static_cast<int>(responses.size()) != num_epochs)
    throw std::invalid_argument("dataset: epoch count mismatch");
  for (int n = 0; n < num_epochs; ++n) {
    if (probes[n].size() != dim || responses[n].size() != dim)
      throw std::invalid_argument("dataset: dimension mismatch at epoch " +
                                  std::to_string(n + 1));
    for (int i = 0; i < dim; ++i) {
      if (!(probes[n](i) > 0.0))
        throw std::invalid_argument("dataset: probe entries must be > 0");
      if (!allow_negative_responses && responses[n](i) < 0.0)
        throw std::invalid_argument("dataset: response entries must be >= 0");
    }
  }
}

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_value(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("dataset csv: bad numeric field '" + s + "'");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string dataset_to_csv(const ProbeResponseDataset& data) {
  std::ostringstream out;
  out << "epoch";
  for (int i = 1; i <= data.dim; ++i) out << ",alpha_" << i;
  for (int i = 1; i <= data.dim; ++i) out << ",beta_" << i;
  out << "\n";
  for (int n = 0; n < data.num_epochs; ++n) {
    out << (n + 1);
    for (int i = 0; i < data.dim; ++i)
      out << ',' << format_value(data.probes[n](i));
    for (int i = 0; i < data.dim; ++i)
      out << ',' << format_value(data.responses[n](i));
    out << "\n";
  }
  return out.str();
}

ProbeResponseDataset dataset_from_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("dataset csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "epoch" || header.size() % 2 != 1)
    throw std::invalid_argument("dataset csv: malformed header");
  const int m = static_cast<int>(header.size() - 1) / 2;
  for (int i = 0; i < m; ++i) {
    if (header[1 + i] != "alpha_" + std::to_string(i + 1) ||
        header[1 + m + i] != "beta_" + std::to_string(i + 1))
      throw std::invalid_argument("dataset csv: malformed header");
  }

  ProbeResponseDataset data;
  data.dim = m;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != 1 + 2 * m)
      throw std::invalid_argument("dataset csv: wrong field count in row");
    Eigen::VectorXd alpha(m), beta(m);
    for (int i = 0; i < m; ++i) {
      alpha(i) = parse_value(fields[1 + i]);
      beta(i) = parse_value(fields[1 + m + i]);
    }
    data.probes.push_back(alpha);
    data.responses.push_back(beta);
  }
  data.num_epochs = static_cast<int>(data.probes.size());
  if (data.num_epochs == 0)
    throw std::invalid_argument("dataset csv: no data rows");
  return data;
}

void write_dataset_csv(const ProbeResponseDataset& data,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << dataset_to_csv(data);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ProbeResponseDataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_csv(buf.str());
}

}  // namespace specrp

#include "swipekit/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace swipekit {

int levenshtein(const std::string& a, const std::string& b) {
  const std::size_t n = b.size();
  std::vector<int> row(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    row[j] = static_cast<int>(j);
  }
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int prev_diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= n; ++j) {
      const int old = row[j];
      const int sub = prev_diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({sub, row[j] + 1, row[j - 1] + 1});
      prev_diag = old;
    }
  }
  return row[n];
}

double wpm(const TranscriptionEvent& event) {
  if (!(event.elapsed > 0.0)) {
    throw std::invalid_argument("wpm: elapsed time must be positive");
  }
  const double words = static_cast<double>(event.committed_final.size()) / 5.0;
  return words / (event.elapsed / 60.0);
}

std::pair<double, double> cer(const TranscriptionEvent& event) {
  if (event.stimulus.empty()) {
    throw std::invalid_argument("cer: empty stimulus");
  }
  const double len = static_cast<double>(event.stimulus.size());
  const double uncorrected = levenshtein(event.stimulus, event.committed_initial) / len;
  const double corrected = levenshtein(event.stimulus, event.committed_final) / len;
  return {uncorrected, corrected};
}

}  // namespace swipekit

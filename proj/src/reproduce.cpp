#include "mallows/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mallows/model.hpp"
#include "mallows/partition.hpp"

namespace mallows::reproduce {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

Ranking table1_true_rho() { return Ranking{2, 1, 4, 3}; }
PermutohedronPoint table1_rho0() { return PermutohedronPoint{2, 1, 3, 4}; }

const std::vector<PrintedRow>& table1_printed() {
  static const std::vector<PrintedRow> rows{
      {{1, 2, 3, 4}, 260, 2, {0.029, 0.038, 0.050, 0.053, 0.053, 0.050}},
      {{1, 2, 4, 3}, 230, 4, {0.172, 0.125, 0.080, 0.052, 0.050, 0.036}},
      {{1, 3, 2, 4}, 310, 6, {0.007, 0.003, 0.003, 0.004, 0.004, 0.004}},
      {{1, 3, 4, 2}, 250, 10, {0.049, 0.010, 0.005, 0.004, 0.004, 0.003}},
      {{1, 4, 2, 3}, 330, 12, {0.004, 0.001, 0.001, 0.002, 0.002, 0.001}},
      {{1, 4, 3, 2}, 300, 14, {0.007, 0.002, 0.001, 0.002, 0.001, 0.001}},
      {{2, 1, 3, 4}, 250, 0, {0.048, 0.129, 0.257, 0.417, 0.436, 0.546}},
      {{2, 1, 4, 3}, 220, 2, {0.367, 0.579, 0.527, 0.410, 0.386, 0.303}},
      {{2, 3, 1, 4}, 350, 8, {0.003, 0.001, 0.001, 0.002, 0.002, 0.002}},
      {{2, 3, 4, 1}, 260, 14, {0.029, 0.005, 0.003, 0.002, 0.002, 0.002}},
      {{2, 4, 1, 3}, 370, 14, {0.002, 0.001, 0.001, 0.001, 0.001, 0.001}},
      {{2, 4, 3, 1}, 310, 18, {0.006, 0.001, 0.001, 0.001, 0.001, 0.001}},
      {{3, 1, 2, 4}, 290, 2, {0.009, 0.010, 0.015, 0.017, 0.023, 0.022}},
      {{3, 1, 4, 2}, 230, 6, {0.169, 0.065, 0.032, 0.016, 0.017, 0.012}},
      {{3, 2, 1, 4}, 340, 6, {0.003, 0.002, 0.002, 0.003, 0.003, 0.003}},
      {{3, 2, 4, 1}, 250, 12, {0.049, 0.007, 0.004, 0.002, 0.002, 0.002}},
      {{3, 4, 1, 2}, 380, 18, {0.002, 0.001, 0.001, 0.001, 0.001, 0.001}},
      {{3, 4, 2, 1}, 350, 20, {0.003, 0.001, 0.001, 0.001, 0.001, 0.001}},
      {{4, 1, 2, 3}, 300, 6, {0.007, 0.005, 0.004, 0.004, 0.004, 0.004}},
      {{4, 1, 3, 2}, 270, 8, {0.019, 0.007, 0.006, 0.004, 0.004, 0.004}},
      {{4, 2, 1, 3}, 350, 10, {0.003, 0.002, 0.001, 0.001, 0.002, 0.001}},
      {{4, 2, 3, 1}, 290, 14, {0.009, 0.002, 0.002, 0.001, 0.001, 0.001}},
      {{4, 3, 1, 2}, 370, 16, {0.002, 0.001, 0.001, 0.001, 0.001, 0.001}},
      {{4, 3, 2, 1}, 340, 18, {0.003, 0.001, 0.001, 0.001, 0.001, 0.000}},
  };
  return rows;
}

RankingSample table1_sample() {
  return sample_exact(MmsParams(table1_true_rho(), kTable1TrueTheta), kTable1SampleSize,
                      RngSeed{kTable1SampleSeed});
}

Table1Result reproduce_table1(const Table1Options& options) {
  Table1Result out;
  out.sample = table1_sample();
  out.rows = all_rankings(4);
  out.epp.assign(out.rows.size(), {});
  const auto table = build_frequency_table(4);
  const auto& printed = table1_printed();

  for (std::size_t c = 0; c < kTable1N0.size(); ++c) {
    const EmmsPrior prior(table1_rho0(), LinkedPrecision{kTable1N0[c]});
    std::map<Ranking, double> epp;
    if (options.exact) {
      const auto joint = exact_posterior_joint(out.sample, prior, ThetaPrior::jeffreys());
      epp = joint.rho;
      out.theta_mean[c] = joint.theta_mean;
    } else {
      McmcConfig cfg;
      cfg.iterations = options.iterations;
      cfg.burn_in = options.burn_in;
      cfg.seed = RngSeed{options.seed};
      cfg.inference_case = options.inference_case;
      const auto trace = run_mcmc(out.sample, prior, ThetaPrior::jeffreys(), cfg, table);
      const auto summary = summarize(trace);
      epp = summary.epp;
      out.theta_mean[c] = summary.theta_mean;
      out.accept_rho[c] = trace.accept_rho;
      out.accept_theta[c] = trace.accept_theta;
    }
    double best = -1.0;
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      auto it = epp.find(out.rows[r]);
      const double p = it == epp.end() ? 0.0 : it->second;
      out.epp[r][c] = p;
      if (p > best) {
        best = p;
        out.modal[c] = out.rows[r];
      }
      out.max_abs_delta = std::max(out.max_abs_delta, std::abs(p - printed[r].epp[c]));
    }
  }
  return out;
}

std::string format_table1(const Table1Result& r) {
  const auto& printed = table1_printed();
  const auto sums = r.sample.column_sums();
  const auto rho0 = table1_rho0();
  std::ostringstream os;
  os << "N = " << r.sample.size() << ", column sums = (" << sums[0] << ',' << sums[1] << ',' << sums[2] << ','
     << sums[3] << ")\n";
  os << "rho        D    D*";
  for (double n0 : kTable1N0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "  N0=%-12g", n0);
    os << buf;
  }
  os << '\n';
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%-10s %-4lld %-3g", r.rows[i].str().c_str(),
                  static_cast<long long>(total_distance(r.sample, r.rows[i])),
                  spearman_distance(r.rows[i], rho0));
    os << buf;
    for (std::size_t c = 0; c < kTable1N0.size(); ++c) {
      os << "  " << fmt("%.3f", r.epp[i][c]) << ' ' << fmt("(%+.3f)", r.epp[i][c] - printed[i].epp[c]);
    }
    os << '\n';
  }
  os << "theta mean      ";
  for (std::size_t c = 0; c < kTable1N0.size(); ++c) {
    os << "  " << fmt("%.3f", r.theta_mean[c]) << ' ' << fmt("(%+.3f)", r.theta_mean[c] - kTable1PrintedThetaMean[c]);
  }
  os << "\nmodal           ";
  for (std::size_t c = 0; c < kTable1N0.size(); ++c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "  %-14s", r.modal[c].str().c_str());
    os << buf;
  }
  os << "\nmax |delta| = " << fmt("%.3f", r.max_abs_delta) << '\n';
  return os.str();
}

const std::string& sushi_covariates_csv() {
  static const std::string csv =
      "item,oil,eat,price,sell\n"
      "shrimp,2.73,2.14,1.84,0.84\n"
      "sea eel,0.93,1.99,1.99,0.88\n"
      "tuna,1.77,2.35,1.87,0.88\n"
      "squid,2.69,2.04,1.52,0.92\n"
      "sea urchin,0.81,1.64,3.29,0.88\n"
      "salmon roe,1.26,1.98,2.70,0.88\n"
      "egg,2.37,1.87,1.03,0.84\n"
      "fatty tuna,0.55,2.06,4.49,0.80\n"
      "tuna roll,2.25,1.88,1.58,0.44\n"
      "cucumber roll,3.73,1.46,1.02,0.40\n";
  return csv;
}

std::vector<Orientation> sushi_orientations() {
  return {Orientation::lower_is_better, Orientation::higher_is_better, Orientation::higher_is_better,
          Orientation::higher_is_better};
}

SushiResult reproduce_sushi() {
  const auto table = parse_covariates_csv(sushi_covariates_csv());
  SushiResult out;
  out.elicitation = elicit_from_covariates(table, sushi_orientations());
  out.items = table.items;
  out.rho02 = midrank_vector(out.elicitation.rho0.coords());
  return out;
}

const std::string& sushi_printed_table() {
  static const std::string text =
      "item,oil,eat,price,sell\n"
      "shrimp,9,2,6,6.5\n"
      "sea eel,3,5,4,3.5\n"
      "tuna,5,1,5,3.5\n"
      "squid,8,4,8,1\n"
      "sea urchin,2,9,2,3.5\n"
      "salmon roe,4,6,3,3.5\n"
      "egg,7,8,9,6.5\n"
      "fatty tuna,1,3,1,8\n"
      "tuna roll,6,7,7,9\n"
      "cucumber roll,10,10,10,10\n";
  return text;
}

std::string format_sushi_table(const SushiResult& r) {
  std::ostringstream os;
  os << "item";
  for (const auto& c : r.elicitation.covariates) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    os << r.items[i];
    for (const auto& col : r.elicitation.rank_vectors) os << ',' << fmt("%g", col[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace mallows::reproduce

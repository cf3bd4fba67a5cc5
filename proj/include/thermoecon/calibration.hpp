#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Historical-data pipeline: ingest GDP / primary-energy series, accumulate
// wealth, estimate lambda, and derive the empirical rate of return and
// inflation-decay diagnostics.

namespace thermoecon {

class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct HistoricalRecord {
    int year = 0;
    double gdp = 0.0;  // billion 2005 USD per year
    std::optional<double> energy_tw;
    std::optional<double> deflator;  // nominal/real output ratio, 1 + i
};

struct HistoricalSeries {
    std::vector<HistoricalRecord> records;  // sorted by year
};

// Delimiter-separated text (comma, semicolon or tab, detected from the
// header). Header row required; columns year and gdp_billion_2005usd are
// mandatory, energy_tw and deflator optional. '#' lines are comments; empty
// or "na" fields mark missing optional values. Throws DataError listing the
// offending line numbers.
HistoricalSeries parse_historical_series(std::istream& in);
HistoricalSeries load_historical_series(const std::string& path);

// Accumulated wealth per record, in billions: the first record contributes
// C_pre + gdp*1yr, later records add trapezoids over the year gaps.
std::vector<double> cumulative_wealth(const HistoricalSeries& series,
                                      double C_pre);

// lambda = energy/wealth in W per $1000; wealth in billions, energy in TW.
double estimate_lambda(double wealth_billion, double energy_tw);

// eta_i = GDP_i / C_i
std::vector<double> empirical_eta(const HistoricalSeries& series,
                                  const std::vector<double>& wealth);

struct DecayDiagnostics {
    double inflation;  // deflator - 1
    double beta;       // eta / (1 - i)
    double gamma;      // beta * i
    double delta;      // j_d/j_a under the small-inflation approximation (= i)
};

struct CalibrationReport {
    double c_pre = 0.0;
    std::vector<int> years;
    std::vector<double> gdp;
    std::vector<std::optional<double>> energy;
    std::vector<double> wealth;
    std::vector<double> eta;
    std::vector<std::optional<double>> lambda;  // only where energy is present
    std::vector<std::optional<DecayDiagnostics>> decay;  // only with deflator
    int lambda_count = 0;
    double lambda_mean = 0.0;
    double lambda_std = 0.0;  // population std over present entries
};

CalibrationReport calibrate_series(const HistoricalSeries& series, double C_pre);

}  // namespace thermoecon

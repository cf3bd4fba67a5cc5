#include "thermoecon/calibration.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace thermoecon {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

char detect_delimiter(const std::string& header) {
    for (char c : {',', ';', '\t'})
        if (header.find(c) != std::string::npos) return c;
    return ',';
}

bool missing_field(const std::string& f) {
    if (f.empty()) return true;
    std::string low;
    for (char c : f) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return low == "na" || low == "nan";
}

bool parse_double(const std::string& f, double& out) {
    const char* b = f.data();
    const char* e = b + f.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc{} && p == e;
}

bool parse_int(const std::string& f, int& out) {
    const char* b = f.data();
    const char* e = b + f.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc{} && p == e;
}

std::string join_lines(const std::vector<int>& lines) {
    std::string s;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(lines[i]);
    }
    return s;
}

}  // namespace

HistoricalSeries parse_historical_series(std::istream& in) {
    std::string line;
    int lineno = 0;

    std::string header;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        header = t;
        break;
    }
    if (header.empty()) throw DataError("empty data file: no header row");

    const char delim = detect_delimiter(header);
    const auto names = split(header, delim);
    int col_year = -1, col_gdp = -1, col_energy = -1, col_deflator = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string& n = names[i];
        if (n == "year") col_year = static_cast<int>(i);
        else if (n == "gdp_billion_2005usd") col_gdp = static_cast<int>(i);
        else if (n == "energy_tw") col_energy = static_cast<int>(i);
        else if (n == "deflator") col_deflator = static_cast<int>(i);
        else throw DataError("unknown column '" + n + "' in header");
    }
    if (col_year < 0 || col_gdp < 0)
        throw DataError("header must name the year and gdp_billion_2005usd columns");

    HistoricalSeries series;
    std::vector<int> bad_lines;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto fields = split(t, delim);
        if (fields.size() != names.size()) {
            bad_lines.push_back(lineno);
            continue;
        }
        HistoricalRecord rec;
        bool ok = parse_int(fields[col_year], rec.year) &&
                  parse_double(fields[col_gdp], rec.gdp) && rec.gdp > 0.0;
        if (ok && col_energy >= 0 && !missing_field(fields[col_energy])) {
            double v;
            ok = parse_double(fields[col_energy], v) && v > 0.0;
            if (ok) rec.energy_tw = v;
        }
        if (ok && col_deflator >= 0 && !missing_field(fields[col_deflator])) {
            double v;
            ok = parse_double(fields[col_deflator], v) && v > 0.0;
            if (ok) rec.deflator = v;
        }
        if (!ok) {
            bad_lines.push_back(lineno);
            continue;
        }
        series.records.push_back(rec);
    }
    if (!bad_lines.empty())
        throw DataError("malformed rows at lines " + join_lines(bad_lines));
    if (series.records.empty()) throw DataError("data file has no records");

    std::sort(series.records.begin(), series.records.end(),
              [](const auto& a, const auto& b) { return a.year < b.year; });
    for (std::size_t i = 1; i < series.records.size(); ++i)
        if (series.records[i].year == series.records[i - 1].year)
            throw DataError("duplicate year " +
                            std::to_string(series.records[i].year));
    return series;
}

HistoricalSeries load_historical_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file: " + path);
    return parse_historical_series(in);
}

std::vector<double> cumulative_wealth(const HistoricalSeries& series,
                                      double C_pre) {
    if (series.records.empty()) throw DataError("empty series");
    if (C_pre < 0.0) throw DataError("pre-series wealth must be >= 0");
    std::vector<double> C;
    C.reserve(series.records.size());
    C.push_back(C_pre + series.records.front().gdp * 1.0);
    for (std::size_t i = 1; i < series.records.size(); ++i) {
        const auto& prev = series.records[i - 1];
        const auto& cur = series.records[i];
        const double gap = static_cast<double>(cur.year - prev.year);
        C.push_back(C.back() + 0.5 * (prev.gdp + cur.gdp) * gap);
    }
    return C;
}

double estimate_lambda(double wealth_billion, double energy_tw) {
    if (wealth_billion <= 0.0)
        throw std::domain_error("lambda estimate requires positive wealth");
    // TW over billions of dollars, re-expressed as W per $1000.
    return 1e6 * energy_tw / wealth_billion;
}

std::vector<double> empirical_eta(const HistoricalSeries& series,
                                  const std::vector<double>& wealth) {
    if (series.records.size() != wealth.size())
        throw DataError("wealth series does not align with records");
    std::vector<double> eta;
    eta.reserve(wealth.size());
    for (std::size_t i = 0; i < wealth.size(); ++i)
        eta.push_back(series.records[i].gdp / wealth[i]);
    return eta;
}

CalibrationReport calibrate_series(const HistoricalSeries& series, double C_pre) {
    CalibrationReport rep;
    rep.c_pre = C_pre;
    rep.wealth = cumulative_wealth(series, C_pre);
    rep.eta = empirical_eta(series, rep.wealth);

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < series.records.size(); ++i) {
        const auto& rec = series.records[i];
        rep.years.push_back(rec.year);
        rep.gdp.push_back(rec.gdp);
        rep.energy.push_back(rec.energy_tw);
        if (rec.energy_tw) {
            const double lam = estimate_lambda(rep.wealth[i], *rec.energy_tw);
            rep.lambda.emplace_back(lam);
            sum += lam;
            sumsq += lam * lam;
            ++rep.lambda_count;
        } else {
            rep.lambda.emplace_back(std::nullopt);
        }
        if (rec.deflator) {
            DecayDiagnostics d;
            d.inflation = *rec.deflator - 1.0;
            d.beta = rep.eta[i] / (1.0 - d.inflation);
            d.gamma = d.beta * d.inflation;
            d.delta = d.inflation;
            rep.decay.emplace_back(d);
        } else {
            rep.decay.emplace_back(std::nullopt);
        }
    }
    if (rep.lambda_count > 0) {
        rep.lambda_mean = sum / rep.lambda_count;
        const double var = sumsq / rep.lambda_count - rep.lambda_mean * rep.lambda_mean;
        rep.lambda_std = std::sqrt(std::max(0.0, var));
    }
    return rep;
}

}  // namespace thermoecon

// Generates the three synthetic screening datasets shipped under data/.
// Records follow the public screening-file schema (ten binary questionnaire
// items, demographics, a result sum and a YES/NO class equal to result >= 7).
// Each record draws a latent severity; the questionnaire items and several
// demographic attributes depend on it, which reproduces the demographic
// correlation structure of the public files. Output is deterministic for a
// given seed.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asdml/rng.hpp"
#include "asdml/table.hpp"

namespace {

using asdml::SplitMix64;

double gauss(SplitMix64& rng) {
    // Box-Muller; one draw per call keeps the stream simple.
    double u1 = rng.next_double();
    while (u1 <= 0.0) u1 = rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double clamp01(double p) { return std::min(0.95, std::max(0.02, p)); }

std::size_t pick(SplitMix64& rng, const std::vector<double>& weights) {
    double total = 0.0;
    for (const double w : weights) total += w;
    double u = rng.next_double() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        u -= weights[i];
        if (u < 0.0) return i;
    }
    return weights.size() - 1;
}

// Category weights tilted by the record's severity; exp keeps them positive.
std::vector<double> tilted(const std::vector<double>& base, const std::vector<double>& beta,
                           double severity) {
    std::vector<double> w(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        w[i] = base[i] * std::exp(beta[i] * severity);
    return w;
}

const std::vector<std::string> kEthnicities = {"White-European", "Asian", "Black", "Latino",
                                               "Others"};
const std::vector<double> kEthnicityBase = {50, 16, 10, 8, 16};
const std::vector<double> kEthnicityBeta = {1.3, -1.15, -0.85, 0.7, 0.0};

// A handful of common countries carry most of the mass; the long tail of
// rare countries mirrors the public files.
const std::vector<std::string> kCommonCountries = {
    "United States", "United Kingdom", "India", "New Zealand", "Australia", "Jordan"};
const std::vector<double> kCommonCountryBase = {17, 13, 10, 8, 6, 5};
const std::vector<double> kCommonCountryBeta = {1.8, 1.2, -1.6, 0.9, -1.2, -1.8};

const std::vector<std::string> kRareCountries = {
    "Austria",  "Argentina",   "Afghanistan", "Lebanon",    "South Africa", "Italy",
    "Pakistan", "Bangladesh",  "Chile",       "France",     "China",        "Saudi Arabia",
    "Egypt",    "Netherlands", "Romania",     "Sweden",     "Tonga",        "Oman",
    "Ethiopia", "Viet Nam",    "Iran",        "Costa Rica", "Germany",      "Mexico",
    "Russia",   "Armenia",     "Iceland",     "Nicaragua",  "Hong Kong",    "Japan"};

const std::vector<std::string> kRelations = {"Self", "Parent", "Relative",
                                             "Health care professional", "Others"};

struct BandParams {
    std::string name;
    std::string age_desc;
    std::size_t count;
    double severity_mean;
    double high_share;  // screening pools mild and pronounced presentations
    double severity_sd;
    int age_min;
    int age_max;
    double age_tail;  // 0 = uniform ages; else mean of the exponential tail
    double flip_rate;  // per-item noise on the profile template
    std::vector<double> relation_weights;
    // The three screening instruments ask different questions, so a shared
    // profile expresses itself through a different item order per band.
    std::array<int, 10> item_order;
    double jaundice_base;
    double family_history_base;
};

struct CountryPick {
    std::string name;
    double lean;  // sign of the country's referral bias
};

CountryPick pick_country(SplitMix64& rng, double severity) {
    // A handful of common countries carry the mass; the rest form a long
    // tail of single-digit counts, each with a mild referral lean.
    if (rng.next_double() < 0.06) {
        std::vector<double> w(kRareCountries.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = std::exp((i % 2 ? 1.2 : -1.2) * severity);
        const std::size_t i = pick(rng, w);
        return {kRareCountries[i], i % 2 ? 1.0 : -1.0};
    }
    auto base = kCommonCountryBase;
    for (auto& v : base) v = std::pow(v, 1.5);
    const std::size_t i = pick(rng, tilted(base, kCommonCountryBeta, severity));
    return {kCommonCountries[i], kCommonCountryBeta[i] > 0 ? 1.0 : -1.0};
}

asdml::RawTable make_band(const BandParams& band, SplitMix64& rng) {
    asdml::RawTable table;
    for (int q = 1; q <= 10; ++q)
        table.schema.push_back({"A" + std::to_string(q) + "_Score",
                                asdml::AttrKind::BinaryScore,
                                {"0", "1"}});
    table.schema.push_back({"age", asdml::AttrKind::Numeric, {}});
    table.schema.push_back({"gender", asdml::AttrKind::Categorical, {"f", "m"}});
    table.schema.push_back({"ethnicity", asdml::AttrKind::Categorical, kEthnicities});
    table.schema.push_back({"jaundice", asdml::AttrKind::Boolean, {"no", "yes"}});
    table.schema.push_back({"PDD", asdml::AttrKind::Boolean, {"no", "yes"}});
    table.schema.push_back({"did_the_qn_before", asdml::AttrKind::Boolean, {"no", "yes"}});
    std::vector<std::string> countries = kCommonCountries;
    countries.insert(countries.end(), kRareCountries.begin(), kRareCountries.end());
    table.schema.push_back({"country_of_res", asdml::AttrKind::Categorical, countries});
    table.schema.push_back({"result", asdml::AttrKind::Numeric, {}});
    table.schema.push_back({"age_desc", asdml::AttrKind::Categorical, {band.age_desc}});
    table.schema.push_back({"relation", asdml::AttrKind::Categorical, kRelations});
    table.schema.push_back({"Class/ASD", asdml::AttrKind::ClassLabel, {"NO", "YES"}});

    for (std::size_t i = 0; i < band.count; ++i) {
        const double mode = rng.next_double() < band.high_share ? 1.4 : -1.4;
        const double severity = band.severity_mean + mode + band.severity_sd * gauss(rng);

        // Presentations cluster into recurring answer profiles. Template
        // slots 0-5 are the broad "core" behaviors, 6-9 the narrower ones
        // seen mostly in pronounced presentations.
        static const std::vector<std::pair<std::array<int, 10>, double>> kLowProfiles = {
            {{1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, 0.18},
            {{1, 1, 1, 1, 1, 1, 0, 0, 0, 0}, 0.15},
            {{1, 1, 0, 0, 0, 1, 1, 0, 1, 1}, 0.15},
            {{1, 0, 1, 0, 1, 1, 0, 0, 0, 0}, 0.16},
            {{0, 1, 0, 1, 0, 0, 0, 0, 0, 0}, 0.18},
            {{0, 0, 1, 0, 1, 0, 0, 0, 0, 0}, 0.18},
        };
        static const std::vector<std::pair<std::array<int, 10>, double>> kHighProfiles = {
            {{1, 1, 1, 1, 1, 1, 0, 1, 1, 0}, 0.26},
            {{1, 1, 1, 1, 1, 0, 1, 1, 0, 1}, 0.24},
            {{1, 1, 1, 1, 1, 1, 1, 0, 1, 1}, 0.18},
            {{1, 0, 1, 1, 0, 1, 1, 1, 1, 1}, 0.18},
            {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 0.14},
        };
        // Discordant presentations: a masked profile crosses the screening
        // threshold despite a mild overall picture, and an over-reported
        // one stays below it despite a pronounced picture.
        static const std::array<int, 10> kMaskedProfiles[2] = {
            {0, 1, 1, 0, 1, 0, 1, 1, 1, 1},
            {1, 0, 0, 1, 0, 1, 1, 1, 1, 1},
        };
        static const std::array<int, 10> kOverReportedProfile = {1, 1, 1, 1, 1, 1, 0, 0, 0, 0};

        const bool pronounced = rng.next_double() < sigmoid(2.6 * severity);
        const auto& pool = pronounced ? kHighProfiles : kLowProfiles;
        std::vector<double> type_weights;
        for (std::size_t t = 0; t < pool.size(); ++t)
            type_weights.push_back(pool[t].second * (t < 2 ? 1.4 : 1.0));
        const std::array<int, 10>* profile_ptr = &pool[pick(rng, type_weights)].first;
        bool discordant = false;
        if (!pronounced && rng.next_double() < 0.14) {
            profile_ptr = &kMaskedProfiles[rng.next_double() < 0.5 ? 0 : 1];
            discordant = true;
        } else if (pronounced && rng.next_double() < 0.05) {
            profile_ptr = &kOverReportedProfile;
            discordant = true;
        }
        const auto& profile = *profile_ptr;

        int total = 0;
        std::array<int, 10> scores;
        for (std::size_t q = 0; q < 10; ++q) {
            int bit = profile[q];
            if (rng.next_double() < band.flip_rate) bit = 1 - bit;
            scores[static_cast<std::size_t>(band.item_order[q])] = bit;
            total += bit;
        }
        const int label = total >= 7 ? 1 : 0;
        // Where a family lives tracks the presentation closely (referral
        // bias), ethnicity follows the region, and the reported history
        // answers share one noisy family context on top.
        const double context = severity + 0.3 * gauss(rng);
        const double presentation = severity + 2.2 * gauss(rng);
        const CountryPick country = pick_country(rng, context);
        const double regional = context + 0.9 * country.lean;

        std::vector<asdml::Cell> row;
        for (std::size_t q = 0; q < 10; ++q) row.emplace_back(scores[q] ? "1" : "0");
        int age;
        if (band.age_tail > 0) {
            double u = rng.next_double();
            while (u <= 0.0) u = rng.next_double();
            age = std::min(band.age_max,
                           band.age_min + static_cast<int>(-band.age_tail * std::log(u)));
        } else {
            age = band.age_min +
                  static_cast<int>(rng.next_below(
                      static_cast<std::uint64_t>(band.age_max - band.age_min + 1)));
        }
        row.emplace_back(std::to_string(age));
        row.emplace_back(
            rng.next_double() < clamp01(sigmoid(0.08 + 0.5 * presentation)) ? "m" : "f");
        row.emplace_back(
            kEthnicities[pick(rng, tilted(kEthnicityBase, kEthnicityBeta, regional))]);
        row.emplace_back(
            rng.next_double() < sigmoid(band.jaundice_base + 2.8 * presentation) ? "yes" : "no");
        row.emplace_back(
            rng.next_double() < sigmoid(band.family_history_base + 2.4 * presentation) ? "yes"
                                                                                       : "no");
        {
            // First-time testers throughout the discordant group.
            const double p_dq = discordant ? 0.0 : sigmoid(-2.75 + 1.4 * presentation);
            row.emplace_back(rng.next_double() < p_dq ? "yes" : "no");
        }
        row.emplace_back(country.name);
        row.emplace_back(std::to_string(total));
        row.emplace_back(band.age_desc);
        row.emplace_back(kRelations[pick(rng, band.relation_weights)]);
        row.emplace_back(label ? "YES" : "NO");

        // Ethnicity and relation go missing together, as in the source files.
        if (rng.next_double() < 0.085) {
            row[12] = std::nullopt;
            row[19] = std::nullopt;
        }
        if (rng.next_double() < 0.015) row[10] = std::nullopt;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate the synthetic screening datasets"};
    std::string out_dir = "data";
    std::uint64_t seed = 7;
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

    // Template slot -> physical item index, one ordering per instrument.
    const std::array<int, 10> kChildOrder = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const std::array<int, 10> kAdolescentOrder = {4, 2, 5, 1, 0, 3, 7, 9, 6, 8};
    const std::array<int, 10> kAdultOrder = {3, 5, 0, 4, 2, 1, 8, 6, 9, 7};

    const std::vector<BandParams> bands = {
        {"child", "4-11 years", 420, 0.0, 0.55, 0.55, 4, 11, 0.0, 0.0022,
         {0.02, 0.88, 0.05, 0.03, 0.02}, kChildOrder, -1.2, -1.5},
        {"adolescent", "12-16 years", 150, 0.0, 0.42, 0.55, 12, 16, 0.0, 0.002,
         {0.08, 0.80, 0.07, 0.03, 0.02}, kAdolescentOrder, -1.2, -1.5},
        {"adult", "18 and more", 680, -0.1, 0.24, 0.55, 18, 50, 7.0, 0.0018,
         {0.90, 0.04, 0.03, 0.02, 0.01}, kAdultOrder, -1.2, -1.5},
    };

    std::filesystem::create_directories(out_dir);
    SplitMix64 rng(seed);
    for (const auto& band : bands) {
        const asdml::RawTable table = make_band(band, rng);
        const std::string path = out_dir + "/" + band.name + ".arff";
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        out << asdml::write_arff(table, "asd_screening_" + band.name);

        std::size_t yes = 0, missing = 0;
        for (const auto& row : table.rows) {
            if (*row[20] == "YES") ++yes;
            for (const auto& cell : row)
                if (!cell) {
                    ++missing;
                    break;
                }
        }
        std::printf("%s: %zu rows, %.3f YES, %zu with missing cells\n", path.c_str(),
                    table.n_rows(), static_cast<double>(yes) / table.n_rows(), missing);
    }
    return 0;
}

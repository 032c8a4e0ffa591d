#pragma once

// The census pipeline: every unimodular triangulation of the degree-d
// triangle, grouped into symmetry orbits, lifted to a regular height
// function where one exists, analyzed into curve / skeleton / theta /
// bitangent / hyperellipticity data, and streamed as canonical records.

#include <atomic>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tropq/bitangent.hpp"
#include "tropq/curve.hpp"
#include "tropq/errors.hpp"
#include "tropq/heights.hpp"
#include "tropq/hyperelliptic.hpp"
#include "tropq/json_io.hpp"
#include "tropq/lattice.hpp"
#include "tropq/theta.hpp"

namespace tropq {

// everything the pipeline derives from one lifted triangulation
struct CurveAnalysis {
    Triangulation triangulation;
    HeightFunction heights;
    TropicalCurve curve;
    Skeleton skel;
    GraphType type = GraphType::Other;
    std::vector<ThetaCharacteristic> thetas;
    std::vector<ThetaKind> theta_kinds;
    std::vector<BitangentClass> bitangents;  // empty unless genus 3 and requested
    bool hyperelliptic = false;
    std::optional<CutLengthWitness> witness;  // absent for types without the cut
};

// structural claims every smooth census curve must satisfy
inline void check_curve_structure(const TropicalCurve& c, const Skeleton& s) {
    std::string diag;
    if (!is_smooth(c, &diag)) throw theorem_violation_error("census curve not smooth: " + diag);
    int per_dir[3] = {0, 0, 0};
    for (const auto& r : c.rays) {
        if (r.dir == LatticePoint{1, 0}) ++per_dir[0];
        else if (r.dir == LatticePoint{0, 1}) ++per_dir[1];
        else if (r.dir == LatticePoint{-1, -1}) ++per_dir[2];
    }
    for (int k = 0; k < 3; ++k)
        if (per_dir[k] != c.degree)
            throw theorem_violation_error("census curve lacks " + std::to_string(c.degree) +
                                          " rays per direction");
    int expected_genus = (c.degree - 1) * (c.degree - 2) / 2;
    if (s.genus() != expected_genus)
        throw theorem_violation_error("census curve of genus " + std::to_string(s.genus()) +
                                      ", expected " + std::to_string(expected_genus));
    if (c.degree == 4 && (s.type() == GraphType::Lollipop || s.type() == GraphType::Other))
        throw theorem_violation_error("census quartic with skeleton type " +
                                      graph_type_name(s.type()));
}

// full single-curve pipeline; with_bitangents controls the expensive part
inline CurveAnalysis analyze_curve(const Triangulation& t, const HeightFunction& h,
                                   bool with_bitangents = true) {
    CurveAnalysis a;
    a.triangulation = t;
    a.heights = h;
    a.curve = dual_curve(h, t);
    a.skel = skeleton(a.curve);
    a.type = a.skel.type();
    check_curve_structure(a.curve, a.skel);

    if (a.skel.genus() >= 1) {
        a.thetas = all_theta_characteristics(a.skel.refined);
        if (a.skel.genus() == 3)  // the trichotomy concerns degree-2 divisors
            for (const auto& tc : a.thetas)
                a.theta_kinds.push_back(classify_theta(a.skel.refined, tc.divisor));
    }
    if (a.skel.genus() == 3) {
        if (with_bitangents) a.bitangents = bitangent_classes(a.curve, a.skel);
        a.hyperelliptic = is_hyperelliptic(a.skel.refined);
        if (a.curve.degree == 4 && a.hyperelliptic)
            throw theorem_violation_error("smooth plane quartic with a hyperelliptic skeleton");
        if (a.type == GraphType::MickeyMouse || a.type == GraphType::OneBridge ||
            a.type == GraphType::TwoBridge) {
            a.witness = cut_length_witness(a.curve, a.skel);
            if (!(a.witness->e2_length > a.witness->e1_length))
                throw theorem_violation_error("cut-length witness failed: e2 <= e1");
        }
    }
    return a;
}

inline CurveAnalysis analyze_curve(const Triangulation& t, bool with_bitangents = true) {
    return analyze_curve(t, regular_heights(t), with_bitangents);
}

struct CensusRecord {
    int triangulation_id = -1;  // index into the canonical enumeration order
    int orbit_id = -1;
    int orbit_size = 0;
    bool regular = true;
    std::string type;  // empty for non-regular orbits
    std::vector<Rat> edge_lengths;  // minimal-model edge lengths
    std::vector<std::string> theta_categories;
    std::vector<std::vector<int>> bitangent_profiles;
    int bitangent_families = 0;
    bool hyperelliptic = false;
    std::optional<CutLengthWitness> witness;
    Triangulation representative;
};

inline json census_record_json(const CensusRecord& r) {
    json j{{"triangulation_id", r.triangulation_id},
           {"orbit_id", r.orbit_id},
           {"orbit_size", r.orbit_size},
           {"regular", r.regular}};
    if (r.regular) {
        j["type"] = r.type;
        json lens = json::array();
        for (const auto& l : r.edge_lengths) lens.push_back(rat_str(l));
        j["edge_lengths"] = lens;
        j["theta_categories"] = r.theta_categories;
        if (!r.bitangent_profiles.empty()) {
            j["bitangent_profiles"] = r.bitangent_profiles;
            j["bitangent_families"] = r.bitangent_families;
        }
        j["hyperelliptic"] = r.hyperelliptic;
        if (r.witness) j["cut_length_witness"] = witness_json(*r.witness);
    }
    j["triangulation"] = triangulation_json(r.representative);
    return j;
}

struct CensusSummary {
    int degree = 0;
    int triangulations = 0;
    int orbits = 0;
    int regular_triangulations = 0;
    int regular_orbits = 0;
    std::map<std::string, int> type_orbit_counts;
    std::map<std::string, std::map<std::string, int>> theta_kind_by_type;
    int hyperelliptic = 0;
    int bitangent_class_mismatches = 0;  // orbits with a count other than 7
};

inline json census_summary_json(const CensusSummary& s) {
    return json{{"degree", s.degree},
                {"triangulations", s.triangulations},
                {"orbits", s.orbits},
                {"regular_triangulations", s.regular_triangulations},
                {"regular_orbits", s.regular_orbits},
                {"type_orbit_counts", s.type_orbit_counts},
                {"theta_kind_by_type", s.theta_kind_by_type},
                {"hyperelliptic", s.hyperelliptic},
                {"bitangent_class_mismatches", s.bitangent_class_mismatches}};
}

struct CensusResult {
    std::vector<CensusRecord> records;  // one per orbit, canonical order
    CensusSummary summary;
};

// Run the census over orbit representatives.  Analyses run on a thread pool;
// the record order is fixed by the canonical orbit enumeration, so output is
// identical for every parallelism width.
inline CensusResult run_census(int degree, int jobs = 1, bool with_bitangents = true) {
    auto ts = enumerate_unimodular_triangulations(degree);
    auto orbits = s3_orbits(ts);

    CensusResult res;
    res.summary.degree = degree;
    res.summary.triangulations = (int)ts.size();
    res.summary.orbits = (int)orbits.size();
    res.records.resize(orbits.size());

    std::atomic<size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < orbits.size(); i = next.fetch_add(1)) {
            {
                std::lock_guard<std::mutex> lk(fail_mutex);
                if (failure) return;
            }
            try {
                CensusRecord& r = res.records[i];
                r.orbit_id = (int)i;
                r.orbit_size = (int)orbits[i].members.size();
                r.triangulation_id = (int)*std::min_element(orbits[i].members.begin(),
                                                            orbits[i].members.end());
                r.representative = orbits[i].representative;
                auto h = try_regular_heights(r.representative);
                if (!h) {
                    r.regular = false;
                    continue;
                }
                CurveAnalysis a = analyze_curve(r.representative, *h, with_bitangents);
                r.type = graph_type_name(a.type);
                for (const auto& e : a.skel.minimal.graph.edges) r.edge_lengths.push_back(e.length);
                for (auto k : a.theta_kinds) r.theta_categories.push_back(theta_kind_name(k));
                for (const auto& bc : a.bitangents) {
                    r.bitangent_profiles.push_back(bc.profile);
                    if (bc.is_family) ++r.bitangent_families;
                }
                r.hyperelliptic = a.hyperelliptic;
                r.witness = a.witness;
            } catch (...) {
                std::lock_guard<std::mutex> lk(fail_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& r : res.records) {
        if (!r.regular) continue;
        ++res.summary.regular_orbits;
        res.summary.regular_triangulations += r.orbit_size;
        ++res.summary.type_orbit_counts[r.type];
        for (const auto& k : r.theta_categories) ++res.summary.theta_kind_by_type[r.type][k];
        if (r.hyperelliptic) ++res.summary.hyperelliptic;
        if (with_bitangents && degree == 4 && r.bitangent_profiles.size() != 7)
            ++res.summary.bitangent_class_mismatches;
    }
    return res;
}

}  // namespace tropq

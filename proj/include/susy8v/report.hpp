#pragma once

#include <map>
#include <string>
#include <vector>

namespace susy8v {

enum class Status { pass, fail, inconclusive };

// One verified identity at one parameter point. `citation` carries the
// formula being checked, so a record is readable on its own.
struct CheckRecord {
    std::string check;
    std::string citation;
    std::map<std::string, double> params;
    double residual = 0.0;
    double tol = 0.0;
    Status status = Status::pass;
    bool control = false;  // expected-red: passes when residual exceeds tol
    double ms = 0.0;
};

struct Report {
    std::vector<CheckRecord> records;

    void add(CheckRecord r) { records.push_back(std::move(r)); }

    // status derived from residual < tol
    void add(const std::string& check, const std::string& citation,
             std::map<std::string, double> params, double residual, double tol) {
        CheckRecord r;
        r.check = check;
        r.citation = citation;
        r.params = std::move(params);
        r.residual = residual;
        r.tol = tol;
        r.status = residual < tol ? Status::pass : Status::fail;
        records.push_back(std::move(r));
    }

    // expected-red control: passes when the residual is LARGE
    void add_control(const std::string& check, const std::string& citation,
                     std::map<std::string, double> params, double residual, double floor) {
        CheckRecord r;
        r.check = check;
        r.citation = citation;
        r.params = std::move(params);
        r.residual = residual;
        r.tol = floor;
        r.status = residual > floor ? Status::pass : Status::fail;
        r.control = true;
        records.push_back(std::move(r));
    }

    void add_inconclusive(const std::string& check, const std::string& citation,
                          std::map<std::string, double> params, const std::string&) {
        CheckRecord r;
        r.check = check;
        r.citation = citation;
        r.params = std::move(params);
        r.status = Status::inconclusive;
        records.push_back(std::move(r));
    }

    void merge(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }

    int count(Status s) const {
        int n = 0;
        for (const auto& r : records)
            if (r.status == s) ++n;
        return n;
    }

    bool pass() const { return count(Status::fail) == 0 && count(Status::inconclusive) == 0; }

    double max_residual() const {
        double m = 0.0;
        for (const auto& r : records) m = std::max(m, r.residual);
        return m;
    }
};

}  // namespace susy8v

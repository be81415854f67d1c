#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfsub {

/// Every tolerance used by the verification suites, pinned in one place and
/// echoed into every report.
class Tolerances {
public:
    Tolerances();

    double get(const std::string& name) const;
    void set(const std::string& name, double value);
    const std::map<std::string, double>& all() const { return values_; }

private:
    std::map<std::string, double> values_;
};

struct IdentityResult {
    std::string id;
    std::string anchor;   // which structural identity this is
    long samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    long reprojections = 0;
};

struct VerificationReport {
    std::string fibration;
    std::string fibration_json;
    std::uint64_t seed = 0;
    std::vector<IdentityResult> identities;

    bool pass() const {
        for (const auto& r : identities)
            if (!r.pass) return false;
        return true;
    }
    void add(IdentityResult r) { identities.push_back(std::move(r)); }
};

/// Residual accumulator: one identity, max over samples.
class ResidualTracker {
public:
    ResidualTracker(std::string id, std::string anchor, double tolerance)
        : id_(std::move(id)), anchor_(std::move(anchor)), tolerance_(tolerance) {}

    void record(double residual) {
        if (residual > max_ || samples_ == 0) max_ = residual;
        ++samples_;
    }
    IdentityResult result(long reprojections = 0) const {
        return IdentityResult{id_, anchor_, samples_, max_, tolerance_,
                              samples_ > 0 && max_ <= tolerance_, reprojections};
    }

private:
    std::string id_, anchor_;
    double tolerance_;
    double max_ = 0.0;
    long samples_ = 0;
};

}  // namespace hopfsub

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ordlab/classify.hpp"

namespace ordlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

Json set_json(const CanonicalSet& s);
Json trace_json(const IndexTrace& t);
Json stepfn_json(const StepFn& s);
Json fn_json(const SimpleFn& f);
Json cert_json(const Certificate& c);
Json class_json(const ClassReport& r);

class Report {
public:
    Report(std::string query, std::string function) : query_(std::move(query)), function_(std::move(function)) {}

    // verifies, assigns an id when missing, and returns it
    std::string add_cert(Certificate c);
    void add_result(const std::string& op, Json params, Json outcome, std::vector<std::string> certs = {});

    bool verified() const { return failure_.empty(); }
    const std::string& failure() const { return failure_; }
    Json to_json(double timing_ms) const;

private:
    std::string query_, function_;
    Json results_ = Json::array();
    Json certs_ = Json::object();
    std::vector<std::string> ids_;
    std::string failure_;
};

// text view derived from the JSON report
std::string render_text(const Json& report);

}  // namespace ordlab

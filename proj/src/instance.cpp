#include "vcn/instance.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vcn {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Instance::Instance(std::vector<double> data_size, std::vector<double> deadline,
                   std::vector<std::vector<double>> bandwidth,
                   std::vector<double> buffer_delay,
                   std::vector<std::vector<std::uint8_t>> support,
                   std::optional<InstanceMeta> meta)
    : data_size_(std::move(data_size)),
      deadline_(std::move(deadline)),
      buffer_delay_(std::move(buffer_delay)),
      meta_(std::move(meta)) {
    num_tasks_ = static_cast<int>(data_size_.size());
    num_modes_ = static_cast<int>(buffer_delay_.size());
    require(num_tasks_ >= 1, "instance needs at least one task");
    require(num_modes_ >= 1, "instance needs at least one mode");
    require(deadline_.size() == data_size_.size(),
            "deadline count does not match task count");
    require(bandwidth.size() == data_size_.size(),
            "bandwidth row count does not match task count");
    require(support.size() == data_size_.size(),
            "support row count does not match task count");

    for (int j = 0; j < num_tasks_; ++j) {
        require(std::isfinite(data_size_[j]) && data_size_[j] > 0,
                "data sizes must be finite and strictly positive");
        require(std::isfinite(deadline_[j]) && deadline_[j] >= 0,
                "deadlines must be finite and non-negative");
    }
    for (int c = 0; c < num_modes_; ++c) {
        require(std::isfinite(buffer_delay_[c]) && buffer_delay_[c] >= 0,
                "buffer delays must be finite and non-negative");
    }

    bandwidth_.resize(static_cast<std::size_t>(num_tasks_) * num_modes_);
    support_.resize(static_cast<std::size_t>(num_tasks_) * num_modes_);
    for (int j = 0; j < num_tasks_; ++j) {
        require(bandwidth[j].size() == static_cast<std::size_t>(num_modes_),
                "bandwidth row width does not match mode count");
        require(support[j].size() == static_cast<std::size_t>(num_modes_),
                "support row width does not match mode count");
        bool any_supported = false;
        for (int c = 0; c < num_modes_; ++c) {
            const double b = bandwidth[j][c];
            require(std::isfinite(b) && b > 0,
                    "bandwidths must be finite and strictly positive");
            const std::uint8_t s = support[j][c];
            require(s == 0 || s == 1, "support entries must be 0 or 1");
            bandwidth_[static_cast<std::size_t>(j) * num_modes_ + c] = b;
            support_[static_cast<std::size_t>(j) * num_modes_ + c] = s;
            any_supported = any_supported || s == 1;
        }
        require(any_supported, "every task needs at least one supported mode");
    }

    mode_bandwidth_.assign(num_modes_, 0.0);
    for (int c = 0; c < num_modes_; ++c) {
        double sum = 0;
        for (int j = 0; j < num_tasks_; ++j) sum += this->bandwidth(j, c);
        mode_bandwidth_[c] = sum / num_tasks_;
    }
    total_data_ = std::accumulate(data_size_.begin(), data_size_.end(), 0.0);
    total_mode_bandwidth_ =
        std::accumulate(mode_bandwidth_.begin(), mode_bandwidth_.end(), 0.0);

    edf_order_.resize(num_tasks_);
    std::iota(edf_order_.begin(), edf_order_.end(), 0);
    std::stable_sort(edf_order_.begin(), edf_order_.end(), [this](int a, int b) {
        return deadline_[a] < deadline_[b];
    });
}

std::string Violation::to_string() const {
    switch (kind) {
        case Kind::ModeOutOfRange:
            return "task " + std::to_string(task) + ": mode index " +
                   std::to_string(mode) + " out of range";
        case Kind::UnsupportedMode:
            return "task " + std::to_string(task) + ": mode " +
                   std::to_string(mode) + " not supported";
        case Kind::WrongLength:
            return "assignment length does not match task count";
    }
    return "unknown violation";
}

double mode_load(const Instance& inst, const Assignment& asg, int mode) {
    if (mode < 0 || mode >= inst.num_modes())
        throw std::out_of_range("mode index out of range");
    assert(is_valid(inst, asg));
    double load = inst.buffer_delay(mode);
    for (int j : inst.edf_order()) {
        if (asg.mode_of[j] == mode) load += inst.transmission_delay(j, mode);
    }
    return load;
}

std::vector<double> task_completion_times(const Instance& inst,
                                          const Assignment& asg,
                                          DelayModel model) {
    assert(is_valid(inst, asg));
    std::vector<double> completion(inst.num_tasks(), 0.0);
    if (model == DelayModel::Literal) {
        for (int j = 0; j < inst.num_tasks(); ++j) {
            const int c = asg.mode_of[j];
            completion[j] = inst.buffer_delay(c) + inst.transmission_delay(j, c);
        }
        return completion;
    }
    // Queued: prefix sums along the EDF order, one running total per mode.
    std::vector<double> running(inst.num_modes());
    for (int c = 0; c < inst.num_modes(); ++c) running[c] = inst.buffer_delay(c);
    for (int j : inst.edf_order()) {
        const int c = asg.mode_of[j];
        running[c] += inst.transmission_delay(j, c);
        completion[j] = running[c];
    }
    return completion;
}

double makespan(const Instance& inst, const Assignment& asg, DelayModel model) {
    const std::vector<double> completion = task_completion_times(inst, asg, model);
    double worst = 0;
    for (double t : completion) worst = std::max(worst, t);
    return worst;
}

double completion_rate(const Instance& inst, const Assignment& asg,
                       DelayModel model) {
    const std::vector<double> completion = task_completion_times(inst, asg, model);
    int ok = 0;
    for (int j = 0; j < inst.num_tasks(); ++j) {
        if (leq_tol(completion[j], inst.deadline(j))) ++ok;
    }
    return static_cast<double>(ok) / inst.num_tasks();
}

std::vector<Violation> validate(const Instance& inst, const Assignment& asg) {
    std::vector<Violation> out;
    if (asg.mode_of.size() != static_cast<std::size_t>(inst.num_tasks())) {
        out.push_back({Violation::Kind::WrongLength, -1, -1});
        return out;
    }
    for (int j = 0; j < inst.num_tasks(); ++j) {
        const int c = asg.mode_of[j];
        if (c < 0 || c >= inst.num_modes()) {
            out.push_back({Violation::Kind::ModeOutOfRange, j, c});
        } else if (!inst.supports(j, c)) {
            out.push_back({Violation::Kind::UnsupportedMode, j, c});
        }
    }
    return out;
}

DelayReport delay_report(const Instance& inst, const Assignment& asg,
                         DelayModel model) {
    DelayReport report;
    report.completion_time = task_completion_times(inst, asg, model);
    report.mode_load.resize(inst.num_modes());
    for (int c = 0; c < inst.num_modes(); ++c)
        report.mode_load[c] = mode_load(inst, asg, c);
    report.makespan = 0;
    for (double t : report.completion_time)
        report.makespan = std::max(report.makespan, t);
    int ok = 0;
    for (int j = 0; j < inst.num_tasks(); ++j) {
        if (leq_tol(report.completion_time[j], inst.deadline(j))) ++ok;
    }
    report.completion_rate = static_cast<double>(ok) / inst.num_tasks();
    return report;
}

}  // namespace vcn

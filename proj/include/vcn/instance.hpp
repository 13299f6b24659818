#ifndef VCN_INSTANCE_HPP
#define VCN_INSTANCE_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Core model of the multi-mode communication assignment problem: one source
// node holds a set of pending transmission tasks (one per destination) and a
// set of communication modes; each task must be sent over exactly one
// supported mode. Units are fixed throughout the library: data sizes in
// kilobits, bandwidths in megabits per second, durations in milliseconds.
// 1 Mbit/s == 1 kbit/ms, so size/bandwidth is already a delay in ms.

namespace vcn {

// Relative-tolerance <= used for deadline and load-target comparisons.
inline bool leq_tol(double a, double b, double rel = 1e-9) {
    const double mag = std::abs(a) > std::abs(b) ? std::abs(a) : std::abs(b);
    return a <= b + rel * mag;
}

struct InstanceMeta {
    std::uint64_t seed = 0;
    std::string generator;
    int generator_version = 0;
};

class Instance {
public:
    // Validates and takes ownership. Throws std::invalid_argument when any
    // invariant fails: at least one task and one mode, sizes/bandwidths
    // strictly positive, deadlines/buffer delays non-negative, every value
    // finite, support entries 0/1, and every task with >= 1 supported mode.
    Instance(std::vector<double> data_size, std::vector<double> deadline,
             std::vector<std::vector<double>> bandwidth,
             std::vector<double> buffer_delay,
             std::vector<std::vector<std::uint8_t>> support,
             std::optional<InstanceMeta> meta = std::nullopt);

    int num_tasks() const { return num_tasks_; }
    int num_modes() const { return num_modes_; }

    double data_size(int task) const { return data_size_[task]; }
    double deadline(int task) const { return deadline_[task]; }
    double buffer_delay(int mode) const { return buffer_delay_[mode]; }
    double bandwidth(int task, int mode) const {
        return bandwidth_[static_cast<std::size_t>(task) * num_modes_ + mode];
    }
    bool supports(int task, int mode) const {
        return support_[static_cast<std::size_t>(task) * num_modes_ + mode] != 0;
    }
    // Transmission delay of one task on one mode, in ms (excludes buffer).
    double transmission_delay(int task, int mode) const {
        return data_size(task) / bandwidth(task, mode);
    }

    // Representative bandwidth of a mode: mean over tasks. The generator
    // emits per-mode uniform bandwidths, so for generated instances this is
    // the mode's bandwidth itself.
    double mode_bandwidth(int mode) const { return mode_bandwidth_[mode]; }
    double total_data() const { return total_data_; }
    double total_mode_bandwidth() const { return total_mode_bandwidth_; }

    // Tasks ordered by (deadline asc, index asc): the canonical intra-mode
    // serialization order shared by mode_load and task_completion_times so
    // their sums agree bitwise.
    const std::vector<int>& edf_order() const { return edf_order_; }

    const std::optional<InstanceMeta>& meta() const { return meta_; }

private:
    int num_tasks_ = 0;
    int num_modes_ = 0;
    std::vector<double> data_size_;
    std::vector<double> deadline_;
    std::vector<double> bandwidth_;  // task-major, num_tasks * num_modes
    std::vector<double> buffer_delay_;
    std::vector<std::uint8_t> support_;  // task-major
    std::vector<double> mode_bandwidth_;
    std::vector<int> edf_order_;
    double total_data_ = 0;
    double total_mode_bandwidth_ = 0;
    std::optional<InstanceMeta> meta_;
};

// Decision variable: mode_of[task] is the chosen mode index.
struct Assignment {
    std::vector<int> mode_of;
};

// Delay semantics. Queued (the default): tasks sharing a mode serialize in
// EDF order and accumulate on that mode's channel. Literal: each task sees
// only the mode's buffer plus its own transmission time, independent of
// co-assigned tasks. Queued is what every solver optimizes; Literal exists
// for diagnostics.
enum class DelayModel { Queued, Literal };

struct Violation {
    enum class Kind { ModeOutOfRange, UnsupportedMode, WrongLength };
    Kind kind;
    int task = -1;
    int mode = -1;
    std::string to_string() const;
};

struct DelayReport {
    std::vector<double> completion_time;  // per task, ms
    std::vector<double> mode_load;        // per mode, ms (queued semantics)
    double makespan = 0;                  // ms
    double completion_rate = 0;           // fraction of tasks within deadline
};

// Queued load of one mode: buffer delay plus the transmission delays of all
// tasks assigned to it, summed in EDF order. Equals the buffer delay alone
// when the mode is empty. Throws std::out_of_range on a bad mode index.
double mode_load(const Instance& inst, const Assignment& asg, int mode);

// Per-task completion times under the chosen delay model.
std::vector<double> task_completion_times(const Instance& inst,
                                          const Assignment& asg,
                                          DelayModel model = DelayModel::Queued);

// Maximum completion time across tasks. Under Queued this equals the largest
// load among modes that carry at least one task.
double makespan(const Instance& inst, const Assignment& asg,
                DelayModel model = DelayModel::Queued);

// Fraction of tasks whose completion time is within their deadline
// (<= with relative tolerance 1e-9).
double completion_rate(const Instance& inst, const Assignment& asg,
                       DelayModel model = DelayModel::Queued);

// Reports every constraint violation; empty result == valid assignment.
// Never throws.
std::vector<Violation> validate(const Instance& inst, const Assignment& asg);
inline bool is_valid(const Instance& inst, const Assignment& asg) {
    return validate(inst, asg).empty();
}

// Full report: completion times, per-mode loads, makespan, completion rate.
DelayReport delay_report(const Instance& inst, const Assignment& asg,
                         DelayModel model = DelayModel::Queued);

}  // namespace vcn

#endif  // VCN_INSTANCE_HPP

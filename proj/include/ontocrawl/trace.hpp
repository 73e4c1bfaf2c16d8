#ifndef ONTOCRAWL_TRACE_HPP
#define ONTOCRAWL_TRACE_HPP

#include <mutex>
#include <string>
#include <vector>

namespace ontocrawl {

// Pipeline stages in execution order. Used to tag trace events so tests can
// check that every work item moves strictly forward through the stages.
enum class Stage {
    BuilderManager,
    BuilderDownload,
    BuilderAnalyze,
    StoreMerge,
    CandidateFetch,
    FormDiscovery,
    Mapping,
    QueryGeneration,
    Submission,
    ResultProcessing,
};

const char* stage_name(Stage stage);

struct TraceEvent {
    Stage stage;
    std::string item;   // the work item the event belongs to (URL, form id, ...)
    std::string detail;
};

// Append-only event log, safe to write from concurrent stages.
class PipelineTrace {
public:
    PipelineTrace() = default;
    PipelineTrace(PipelineTrace&& other) noexcept { *this = std::move(other); }
    PipelineTrace& operator=(PipelineTrace&& other) noexcept {
        if (this != &other) {
            std::scoped_lock lock(mutex_, other.mutex_);
            events_ = std::move(other.events_);
        }
        return *this;
    }

    void record(Stage stage, std::string item, std::string detail = {}) {
        std::lock_guard lock(mutex_);
        events_.push_back(TraceEvent{stage, std::move(item), std::move(detail)});
    }

    std::vector<TraceEvent> events() const {
        std::lock_guard lock(mutex_);
        return events_;
    }

    long count(Stage stage) const {
        std::lock_guard lock(mutex_);
        long n = 0;
        for (const auto& e : events_)
            if (e.stage == stage) ++n;
        return n;
    }

private:
    mutable std::mutex mutex_;
    std::vector<TraceEvent> events_;
};

inline const char* stage_name(Stage stage) {
    switch (stage) {
        case Stage::BuilderManager: return "builder.manager";
        case Stage::BuilderDownload: return "builder.download";
        case Stage::BuilderAnalyze: return "builder.analyze";
        case Stage::StoreMerge: return "store.merge";
        case Stage::CandidateFetch: return "miner.fetch";
        case Stage::FormDiscovery: return "miner.discover";
        case Stage::Mapping: return "miner.map";
        case Stage::QueryGeneration: return "miner.generate";
        case Stage::Submission: return "miner.submit";
        case Stage::ResultProcessing: return "result.process";
    }
    return "?";
}

} // namespace ontocrawl

#endif // ONTOCRAWL_TRACE_HPP

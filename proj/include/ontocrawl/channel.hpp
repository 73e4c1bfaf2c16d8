#ifndef ONTOCRAWL_CHANNEL_HPP
#define ONTOCRAWL_CHANNEL_HPP

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>

namespace ontocrawl {

// The named hand-off points between pipeline stages. Each channel has exactly
// one consuming stage; the builder and miner keep separate channels even where
// the stage roles rhyme.
enum class ChannelId {
    SeedInput,        // coordinator -> builder queue manager
    PageDownload,     // queue manager -> downloader
    PageAnalysis,     // downloader -> annotation analyzer
    StoreWrite,       // analyzer -> graph merger
    CandidateFetch,   // coordinator -> form downloader
    FormAnalysis,     // form downloader -> form analyzer
    FormMapping,      // form analyzer -> mapping manager
    QueryGeneration,  // mapping manager -> query generator/submitter
    ResultProcessing, // submitter -> result processor
};

const char* channel_name(ChannelId id);

// Bounded blocking FIFO connecting two stages. push() blocks while full and
// fails once the channel is closed; pop() drains remaining items after close
// before reporting exhaustion, so shutdown never loses work.
template <typename T>
class BoundedChannel {
public:
    explicit BoundedChannel(ChannelId id, std::size_t capacity)
        : id_(id), capacity_(capacity ? capacity : 1) {}

    ChannelId id() const { return id_; }

    bool push(T item) {
        std::unique_lock lock(mutex_);
        not_full_.wait(lock, [&] { return closed_ || items_.size() < capacity_; });
        if (closed_) return false;
        items_.push_back(std::move(item));
        not_empty_.notify_one();
        return true;
    }

    std::optional<T> pop() {
        std::unique_lock lock(mutex_);
        not_empty_.wait(lock, [&] { return closed_ || !items_.empty(); });
        if (items_.empty()) return std::nullopt;
        T item = std::move(items_.front());
        items_.pop_front();
        not_full_.notify_one();
        return item;
    }

    std::optional<T> try_pop() {
        std::lock_guard lock(mutex_);
        if (items_.empty()) return std::nullopt;
        T item = std::move(items_.front());
        items_.pop_front();
        not_full_.notify_one();
        return item;
    }

    void close() {
        std::lock_guard lock(mutex_);
        closed_ = true;
        not_empty_.notify_all();
        not_full_.notify_all();
    }

    bool closed() const {
        std::lock_guard lock(mutex_);
        return closed_;
    }

private:
    ChannelId id_;
    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
    std::deque<T> items_;
    bool closed_ = false;
};

inline const char* channel_name(ChannelId id) {
    switch (id) {
        case ChannelId::SeedInput: return "seed-input";
        case ChannelId::PageDownload: return "page-download";
        case ChannelId::PageAnalysis: return "page-analysis";
        case ChannelId::StoreWrite: return "store-write";
        case ChannelId::CandidateFetch: return "candidate-fetch";
        case ChannelId::FormAnalysis: return "form-analysis";
        case ChannelId::FormMapping: return "form-mapping";
        case ChannelId::QueryGeneration: return "query-generation";
        case ChannelId::ResultProcessing: return "result-processing";
    }
    return "?";
}

} // namespace ontocrawl

#endif // ONTOCRAWL_CHANNEL_HPP

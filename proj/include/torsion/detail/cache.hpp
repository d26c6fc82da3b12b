#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace torsion::detail {

/// Write-once slot for a value derived from an immutable owner. Concurrent
/// first readers may each compute the value; the first store wins and all
/// computations produce identical results.
template <class T>
class Lazy {
public:
    Lazy() = default;
    Lazy(const Lazy& other) : value_(other.load()) {}
    Lazy& operator=(const Lazy& other)
    {
        if (this != &other) {
            auto v = other.load();
            std::lock_guard lock(mutex_);
            value_ = std::move(v);
        }
        return *this;
    }

    template <class Compute>
    const T& get(Compute&& compute) const
    {
        if (auto v = load())
            return *v;
        auto fresh = std::make_shared<const T>(compute());
        std::lock_guard lock(mutex_);
        if (!value_)
            value_ = std::move(fresh);
        return *value_;
    }

    void reset()
    {
        std::lock_guard lock(mutex_);
        value_.reset();
    }

private:
    std::shared_ptr<const T> load() const
    {
        std::lock_guard lock(mutex_);
        return value_;
    }

    mutable std::mutex mutex_;
    mutable std::shared_ptr<const T> value_;
};

/// Process-wide memo table keyed by an integer parameter.
template <class Key, class T>
class SharedCache {
public:
    template <class Make>
    std::shared_ptr<const T> get(const Key& key, Make&& make)
    {
        {
            std::lock_guard lock(mutex_);
            if (auto it = table_.find(key); it != table_.end())
                return it->second;
        }
        // Built outside the lock so that make() may recurse into this cache.
        auto fresh = std::make_shared<const T>(make());
        std::lock_guard lock(mutex_);
        return table_.emplace(key, std::move(fresh)).first->second;
    }

private:
    std::mutex mutex_;
    std::map<Key, std::shared_ptr<const T>> table_;
};

} // namespace torsion::detail

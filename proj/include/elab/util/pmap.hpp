#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace elab {

/// Persistent ordered map (AVL tree with path copying).
///
/// Copying a pmap is O(1) and the copy is fully independent: mutators
/// rebuild only the path from the root to the touched node and share the
/// rest. The solver relies on this to snapshot its queue, occurrence index
/// and substitution at every case split.
template <class K, class V, class Compare = std::less<K>>
class pmap {
    struct node {
        K                           key;
        V                           value;
        std::shared_ptr<const node> left;
        std::shared_ptr<const node> right;
        int                         height;
        std::size_t                 size;
    };
    using node_ptr = std::shared_ptr<const node>;

    node_ptr m_root;

    static int height(node_ptr const & n) { return n ? n->height : 0; }
    static std::size_t size(node_ptr const & n) { return n ? n->size : 0; }

    static node_ptr make(K key, V value, node_ptr left, node_ptr right) {
        int h = 1 + std::max(height(left), height(right));
        std::size_t s = 1 + size(left) + size(right);
        return std::make_shared<const node>(node{std::move(key), std::move(value), std::move(left),
                                                 std::move(right), h, s});
    }

    static node_ptr rotate_right(node_ptr const & n) {
        node_ptr const & l = n->left;
        return make(l->key, l->value, l->left, make(n->key, n->value, l->right, n->right));
    }

    static node_ptr rotate_left(node_ptr const & n) {
        node_ptr const & r = n->right;
        return make(r->key, r->value, make(n->key, n->value, n->left, r->left), r->right);
    }

    static node_ptr balance(K key, V value, node_ptr left, node_ptr right) {
        int hl = height(left), hr = height(right);
        if (hl > hr + 1) {
            if (height(left->left) >= height(left->right))
                return rotate_right(make(std::move(key), std::move(value), std::move(left), std::move(right)));
            node_ptr nl = rotate_left(left);
            return rotate_right(make(std::move(key), std::move(value), std::move(nl), std::move(right)));
        }
        if (hr > hl + 1) {
            if (height(right->right) >= height(right->left))
                return rotate_left(make(std::move(key), std::move(value), std::move(left), std::move(right)));
            node_ptr nr = rotate_right(right);
            return rotate_left(make(std::move(key), std::move(value), std::move(left), std::move(nr)));
        }
        return make(std::move(key), std::move(value), std::move(left), std::move(right));
    }

    static node_ptr insert(node_ptr const & n, K const & key, V const & value) {
        if (!n)
            return make(key, value, nullptr, nullptr);
        Compare lt;
        if (lt(key, n->key))
            return balance(n->key, n->value, insert(n->left, key, value), n->right);
        if (lt(n->key, key))
            return balance(n->key, n->value, n->left, insert(n->right, key, value));
        return make(key, value, n->left, n->right);
    }

    static node_ptr remove_min(node_ptr const & n, node_ptr & min_out) {
        if (!n->left) {
            min_out = n;
            return n->right;
        }
        return balance(n->key, n->value, remove_min(n->left, min_out), n->right);
    }

    static node_ptr erase(node_ptr const & n, K const & key, bool & found) {
        if (!n)
            return n;
        Compare lt;
        if (lt(key, n->key)) {
            node_ptr l = erase(n->left, key, found);
            return found ? balance(n->key, n->value, l, n->right) : n;
        }
        if (lt(n->key, key)) {
            node_ptr r = erase(n->right, key, found);
            return found ? balance(n->key, n->value, n->left, r) : n;
        }
        found = true;
        if (!n->left)
            return n->right;
        if (!n->right)
            return n->left;
        node_ptr succ;
        node_ptr r = remove_min(n->right, succ);
        return balance(succ->key, succ->value, n->left, r);
    }

    template <class F>
    static void for_each(node_ptr const & n, F & f) {
        if (!n)
            return;
        for_each(n->left, f);
        f(n->key, n->value);
        for_each(n->right, f);
    }

public:
    pmap() = default;

    bool empty() const { return !m_root; }
    std::size_t size() const { return size(m_root); }

    V const * find(K const & key) const {
        Compare lt;
        node const * n = m_root.get();
        while (n) {
            if (lt(key, n->key))
                n = n->left.get();
            else if (lt(n->key, key))
                n = n->right.get();
            else
                return &n->value;
        }
        return nullptr;
    }

    bool contains(K const & key) const { return find(key) != nullptr; }

    void insert(K const & key, V const & value) { m_root = insert(m_root, key, value); }

    bool erase(K const & key) {
        bool found = false;
        m_root = erase(m_root, key, found);
        return found;
    }

    std::optional<std::pair<K, V>> min() const {
        node const * n = m_root.get();
        if (!n)
            return std::nullopt;
        while (n->left)
            n = n->left.get();
        return std::make_pair(n->key, n->value);
    }

    /// Visits entries in key order.
    template <class F>
    void for_each(F && f) const {
        for_each(m_root, f);
    }

    /// True when both maps share the same root, i.e. one is an unmodified
    /// snapshot of the other.
    bool same_root(pmap const & other) const { return m_root == other.m_root; }

    friend bool operator==(pmap const & a, pmap const & b) {
        if (a.m_root == b.m_root)
            return true;
        if (a.size() != b.size())
            return false;
        std::vector<std::pair<K const *, V const *>> xs, ys;
        a.for_each([&](K const & k, V const & v) { xs.emplace_back(&k, &v); });
        b.for_each([&](K const & k, V const & v) { ys.emplace_back(&k, &v); });
        Compare lt;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (lt(*xs[i].first, *ys[i].first) || lt(*ys[i].first, *xs[i].first))
                return false;
            if (!(*xs[i].second == *ys[i].second))
                return false;
        }
        return true;
    }
};

}  // namespace elab

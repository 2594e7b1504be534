#include "capkit/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "capkit/classify.hpp"
#include "capkit/config.hpp"
#include "capkit/error.hpp"

namespace capkit {

namespace {

/* Include/exclude DFS over a candidate mask.  The candidate set always
 * consists of points addable to the current partial cap, so adding a point p
 * removes exactly {third(p, x) : x in cur} and p itself. */
struct CapDfs {
  const Space& sp;
  int best = 0;
  std::vector<Mask>* out = nullptr;
  std::size_t limit = static_cast<std::size_t>(-1);
  bool truncated = false;
  int cur[128];
  int ncur = 0;

  explicit CapDfs(const Space& s) : sp(s) {}

  /* maximum cap size only */
  void max_rec(Mask cands) {
    if (ncur > best) best = ncur;
    int p = cands.lowest();
    if (p < 0) return;
    if (ncur + cands.count() <= best) return;
    cands.reset(p);
    Mask inc = cands;
    const std::uint8_t* row = sp.third_row(p);
    for (int i = 0; i < ncur; ++i) inc.reset(row[cur[i]]);
    cur[ncur++] = p;
    max_rec(inc);
    --ncur;
    max_rec(cands);
  }

  /* every cap of exactly size k */
  void size_rec(Mask cands, int k) {
    if (ncur == k) {
      if (out->size() >= limit) {
        truncated = true;
        return;
      }
      Mask m;
      for (int i = 0; i < ncur; ++i) m.set(cur[i]);
      out->push_back(m);
      return;
    }
    if (truncated) return;
    int rem = cands.count();
    if (ncur + rem < k) return;
    int p = cands.lowest();
    cands.reset(p);
    Mask inc = cands;
    const std::uint8_t* row = sp.third_row(p);
    for (int i = 0; i < ncur; ++i) inc.reset(row[cur[i]]);
    cur[ncur++] = p;
    size_rec(inc, k);
    --ncur;
    size_rec(cands, k);
  }
};

bool mask_is_cap(const Space& sp, const Mask& s, int cnt) {
  if (cnt < 3) return true;
  int pts[128];
  int m = 0;
  s.for_each([&](int p) { pts[m++] = p; });
  for (int i = 0; i < m; ++i) {
    const std::uint8_t* row = sp.third_row(pts[i]);
    for (int j = i + 1; j < m; ++j)
      if (s.test(row[pts[j]])) return false;
  }
  return true;
}

std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ull + h;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

/* scan identity: resuming against a checkpoint from a different task must
 * fail loudly */
std::uint64_t scan_key(const ScanTask& task, long long njobs) {
  std::uint64_t h = 0x6161747361636b65ull;
  h = mix64(h, static_cast<std::uint64_t>(task.n));
  h = mix64(h, task.mode == PruneMode::stream ? 1 : 2);
  h = mix64(h, task.left.hash());
  h = mix64(h, task.right0.hash());
  for (int t : task.thresholds) h = mix64(h, 0x1000 + t);
  h = mix64(h, static_cast<std::uint64_t>(task.collect_size + 2));
  h = mix64(h, static_cast<std::uint64_t>(njobs));
  return h;
}

struct RangeAcc {
  int best = -1;
  long long embeddings = 0;
  long long fastvio = 0;
  std::map<int, long long> tallies;
  std::vector<Mask> wits;  /* stacked full-space caps */
  bool truncated = false;
};

struct EvalCtx {
  int n = 0;
  int nl = 0;
  const Space* lo = nullptr;
  std::vector<Mask> maskT;       /* maskT[v] = {third(a, v) : a in left} */
  Mask left;
  std::vector<int> thresholds;   /* ascending */
  int kmin = INT_MAX;            /* smallest threshold */
  int ccut = INT_MAX;            /* collect_size when set */
  int collect_size = -1;
  std::size_t witness_limit = 0;
};

/* One embedding: B = {img[0..nb)}.  weight = translation-coset multiplicity
 * carried by this representative. */
void eval_images(const EvalCtx& cx, const int* img, int nb, long long weight,
                 RangeAcc& acc) {
  Mask excl;
  for (int j = 0; j < nb; ++j) excl |= cx.maskT[img[j]];
  Mask allowed = Mask::andnot(cx.lo->all, excl);
  acc.embeddings += weight;
  int cnt = allowed.count();
  /* Embeddings that can no longer contribute to the max, a tally, or the
   * collection are skipped; anything with >= 7 allowed points is always
   * evaluated so the "7 allowed points force a full 9-cap" hypothesis is
   * checked against every embedding it covers. */
  if (cnt < cx.kmin && cnt < cx.ccut && cnt < acc.best && cnt < 7) return;
  bool capflag = mask_is_cap(*cx.lo, allowed, cnt);
  int m;
  if (capflag) {
    m = cnt;
  } else {
    CapDfs d(*cx.lo);
    d.max_rec(allowed);
    m = d.best;
  }
  if (cnt >= 7 && !(capflag && cnt == 9)) acc.fastvio += weight;
  for (int t : cx.thresholds) {
    if (m < t) break;
    acc.tallies[t] += weight;
  }

  int want;
  if (cx.collect_size >= 0) {
    want = cx.collect_size;
    if (m > acc.best) acc.best = m;
    if (m < want) return;
  } else {
    if (m < acc.best) return;
    if (m > acc.best) {
      acc.wits.clear();
      acc.truncated = false;
      acc.best = m;
    }
    want = m;
  }

  std::vector<Mask> mids;
  CapDfs d(*cx.lo);
  d.out = &mids;
  d.limit = cx.witness_limit > acc.wits.size()
                ? cx.witness_limit - acc.wits.size()
                : 0;
  if (d.limit == 0) {
    acc.truncated = true;
    return;
  }
  d.size_rec(allowed, want);
  if (d.truncated) acc.truncated = true;
  if (mids.empty()) return;
  Mask bmask;
  for (int j = 0; j < nb; ++j) bmask.set(img[j]);
  int dstd = standard_dir(cx.n);
  Mask base = embed_layer(cx.n, dstd, 2, cx.left) | embed_layer(cx.n, dstd, 1, bmask);
  for (const Mask& mid : mids)
    acc.wits.push_back(base | embed_layer(cx.n, dstd, 0, mid));
}

struct StreamCtx {
  int nl = 0, N = 0, nb = 0;
  const Space* lo = nullptr;
  std::vector<int> bpts;
  std::vector<int> d1[6], d2[6];  /* digit-k index lists of bpts */
};

/* Column DFS over invertible maps: level k picks the image of basis vector
 * 3^k outside the span of the previous columns.  img[k] carries the partial
 * images of bpts under the digits below k. */
struct StreamWalk {
  const EvalCtx& cx;
  const StreamCtx& sc;
  RangeAcc& acc;
  int img[6][24];
  int span_pts[6][81];
  int span_sz[6];
  Mask span_mask[6];

  StreamWalk(const EvalCtx& c, const StreamCtx& s, RangeAcc& a)
      : cx(c), sc(s), acc(a) {
    span_pts[0][0] = 0;
    span_sz[0] = 1;
    span_mask[0] = Mask::with_bit(0);
    for (int j = 0; j < sc.nb; ++j) img[0][j] = 0;
  }

  void descend(int k, int c) {
    const Space& lo = *sc.lo;
    int c2 = lo.add(c, c);
    const std::uint8_t* rc = &lo.add_tab[static_cast<std::size_t>(c) * lo.N];
    const std::uint8_t* rc2 = &lo.add_tab[static_cast<std::size_t>(c2) * lo.N];
    const int* prev = img[k];
    int* next = img[k + 1];
    for (int j = 0; j < sc.nb; ++j) next[j] = prev[j];
    for (int j : sc.d1[k]) next[j] = rc[prev[j]];
    for (int j : sc.d2[k]) next[j] = rc2[prev[j]];
    if (k == sc.nl - 1) {
      eval_images(cx, next, sc.nb, 1, acc);
      return;
    }
    const int* sp0 = span_pts[k];
    int s0 = span_sz[k];
    int* sp1 = span_pts[k + 1];
    Mask sm = span_mask[k];
    for (int i = 0; i < s0; ++i) {
      sp1[i] = sp0[i];
      int a = rc[sp0[i]], b = rc2[sp0[i]];
      sp1[s0 + i] = a;
      sp1[2 * s0 + i] = b;
      sm.set(a);
      sm.set(b);
    }
    span_sz[k + 1] = 3 * s0;
    span_mask[k + 1] = sm;
    for (int nc = 1; nc < sc.N; ++nc)
      if (!sm.test(nc)) descend(k + 1, nc);
  }
};

std::string tallies_text(const std::map<int, long long>& t) {
  if (t.empty()) return "-";
  std::string s;
  for (const auto& [k, v] : t) {
    if (!s.empty()) s += ',';
    s += std::to_string(k) + ':' + std::to_string(v);
  }
  return s;
}

}  // namespace

Mask middle_allowed(int n, const Mask& a, const Mask& b) {
  const Space& sp = space(n);
  const auto& dir = sp.dirs[standard_dir(n)];
  require(a.subset_of(dir.layer[2]), "middle_allowed: left cap must sit at layer value 2");
  require(b.subset_of(dir.layer[1]), "middle_allowed: right cap must sit at layer value 1");
  require(is_cap(n, a) && is_cap(n, b), "middle_allowed: layers must be caps");
  Mask excl;
  a.for_each([&](int p) {
    const std::uint8_t* row = sp.third_row(p);
    b.for_each([&](int q) { excl.set(row[q]); });
  });
  return Mask::andnot(dir.layer[0], excl);
}

MiddleMax max_cap_in(int n, const Mask& allowed) {
  const Space& sp = space(n);
  require(allowed.subset_of(sp.all), "max_cap_in: mask outside the space");
  CapDfs d(sp);
  d.max_rec(allowed);
  MiddleMax r;
  r.size = d.best;
  CapDfs c(sp);
  c.out = &r.witnesses;
  c.size_rec(allowed, r.size);
  std::sort(r.witnesses.begin(), r.witnesses.end());
  return r;
}

MiddleMax max_middle(int n, const Mask& a, const Mask& b) {
  return max_cap_in(n, middle_allowed(n, a, b));
}

std::vector<Mask> caps_of_size_in(int n, const Mask& allowed, int size) {
  const Space& sp = space(n);
  require(allowed.subset_of(sp.all), "caps_of_size_in: mask outside the space");
  require(size >= 0, "caps_of_size_in: negative size");
  std::vector<Mask> out;
  CapDfs d(sp);
  d.out = &out;
  d.size_rec(allowed, size);
  std::sort(out.begin(), out.end());
  return out;
}

Mask stack_standard(int n, const Mask& a, const Mask& m, const Mask& b) {
  int d = standard_dir(n);
  return embed_layer(n, d, 2, a) | embed_layer(n, d, 0, m) |
         embed_layer(n, d, 1, b);
}

ScanResult scan_pair(const ScanTask& task) {
  require(task.n >= 2 && task.n <= kMaxDim, "scan_pair: dimension out of range");
  int nl = task.n - 1;
  const Space& lo = space(nl);
  require(task.left.subset_of(lo.all) && task.right0.subset_of(lo.all),
          "scan_pair: layer caps must live in the layer space");
  require(is_cap(nl, task.left), "scan_pair: left layer is not a cap");
  require(is_cap(nl, task.right0), "scan_pair: right layer is not a cap");

  EvalCtx cx;
  cx.n = task.n;
  cx.nl = nl;
  cx.lo = &lo;
  cx.left = task.left;
  cx.thresholds = task.thresholds;
  std::sort(cx.thresholds.begin(), cx.thresholds.end());
  cx.thresholds.erase(std::unique(cx.thresholds.begin(), cx.thresholds.end()),
                      cx.thresholds.end());
  for (int t : cx.thresholds) require(t >= 0, "scan_pair: negative threshold");
  if (!cx.thresholds.empty()) cx.kmin = cx.thresholds.front();
  cx.collect_size = task.collect_size;
  if (task.collect_size >= 0) cx.ccut = task.collect_size;
  cx.witness_limit = task.witness_limit;

  ScanResult res;
  for (int t : cx.thresholds) res.tallies[t] = 0;

  /* Degenerate layers: the middle statistic no longer depends on the
   * embedding, so a single evaluation stands for every map. */
  if (task.right0.empty() || task.left.empty()) {
    int m = max_cap_size(nl);
    long long total = task.right0.empty() ? 1 : gl_order(nl);
    res.max_middle = m;
    res.embeddings = total;
    for (int t : cx.thresholds)
      if (m >= t) res.tallies[t] = total;
    res.digest = mix64(mix64(0, static_cast<std::uint64_t>(m)),
                       static_cast<std::uint64_t>(total));
    return res;
  }

  cx.maskT.assign(lo.N, Mask{});
  task.left.for_each([&](int a) {
    const std::uint8_t* row = lo.third_row(a);
    for (int v = 0; v < lo.N; ++v) cx.maskT[v].set(row[v]);
  });

  StreamCtx sc;
  sc.nl = nl;
  sc.N = lo.N;
  sc.lo = &lo;
  sc.bpts = task.right0.to_points();
  sc.nb = static_cast<int>(sc.bpts.size());
  for (int k = 0; k < nl; ++k)
    for (int j = 0; j < sc.nb; ++j) {
      int dg = pt_digit(sc.bpts[j], k);
      if (dg == 1) sc.d1[k].push_back(j);
      if (dg == 2) sc.d2[k].push_back(j);
    }

  /* quotient mode: one representative per translation-normalized GL image */
  std::vector<Mask> images;
  long long weight = 1;
  if (task.mode == PruneMode::quotient) {
    CanonicalResult canon = canonical_form(nl, task.right0);
    weight = canon.sym_order;
    long long expect = gl_order(nl) / weight;
    require(expect <= 2'000'000,
            "scan_pair: quotient image set too large; use stream mode");
    std::vector<std::vector<std::uint8_t>> perms;
    for (const Mat& g : gl_generators(nl))
      perms.push_back(AffineMap(g, 0).perm_table());
    std::unordered_set<Mask, MaskHash> seen;
    std::vector<Mask> queue{translate_canonical(nl, task.right0)};
    seen.insert(queue[0]);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Mask cur = queue[qi];
      for (const auto& pm : perms) {
        Mask img = translate_canonical(nl, apply_perm(pm, cur));
        if (seen.insert(img).second) queue.push_back(img);
      }
    }
    images.assign(seen.begin(), seen.end());
    std::sort(images.begin(), images.end());
    require(static_cast<long long>(images.size()) == expect,
            "scan_pair: image orbit disagrees with the symmetry order");
  }

  /* jobs: stream = one per first column choice; quotient = image chunks */
  constexpr long long kChunk = 4096;
  long long njobs = task.mode == PruneMode::stream
                        ? lo.N - 1
                        : (static_cast<long long>(images.size()) + kChunk - 1) / kChunk;
  std::uint64_t key = scan_key(task, njobs);

  std::vector<RangeAcc> results(njobs);
  std::vector<char> have(njobs, 0);

  std::ofstream ck;
  if (!task.checkpoint.empty()) {
    std::ifstream in(task.checkpoint);
    bool fresh = !in.good() || in.peek() == std::ifstream::traits_type::eof();
    if (!fresh) {
      std::string line;
      require(static_cast<bool>(std::getline(in, line)), "scan_pair: unreadable checkpoint");
      std::istringstream hs(line);
      std::string mag, ver, kw, hex;
      hs >> mag >> ver >> kw >> hex;
      require(mag == "capscan" && ver == "v1" && kw == "key",
              "scan_pair: malformed checkpoint header");
      std::uint64_t got = 0;
      try {
        got = std::stoull(hex, nullptr, 16);
      } catch (const std::exception&) {
        fail("scan_pair: malformed checkpoint key");
      }
      require(got == key, "scan_pair: checkpoint belongs to a different scan");
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string w;
        long long a = -1, b = -1, e = 0, v = 0;
        int best = -1;
        std::string tal;
        long long wall = 0;
        ls >> w;
        if (w != "range") continue;
        ls >> a >> b;
        ls >> w >> best >> w >> e >> w >> v >> w >> tal >> w >> wall;
        require(ls && a >= 0 && b == a + 1 && a < njobs,
                "scan_pair: malformed checkpoint range line");
        RangeAcc acc;
        acc.best = best;
        acc.embeddings = e;
        acc.fastvio = v;
        if (tal != "-") {
          std::istringstream ts(tal);
          std::string item;
          while (std::getline(ts, item, ',')) {
            auto pos = item.find(':');
            require(pos != std::string::npos, "scan_pair: malformed tally entry");
            try {
              acc.tallies[std::stoi(item.substr(0, pos))] =
                  std::stoll(item.substr(pos + 1));
            } catch (const std::exception&) {
              fail("scan_pair: malformed tally entry");
            }
          }
        }
        results[a] = std::move(acc);
        have[a] = 1;
      }
    }
    in.close();
    ck.open(task.checkpoint, std::ios::app);
    require(ck.good(), "scan_pair: cannot open checkpoint for writing");
    if (fresh) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%016llx",
                    static_cast<unsigned long long>(key));
      ck << "capscan v1 key " << buf << "\n";
      ck.flush();
    }
  }

  int nthreads = resolve_threads(task.threads);
  std::atomic<long long> next{0};
  std::atomic<bool> out_of_time{false};
  std::atomic<bool> out_of_budget{false};
  std::atomic<long long> done_emb{0};
  for (long long j = 0; j < njobs; ++j)
    if (have[j]) done_emb += results[j].embeddings;
  std::mutex ckmu;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
  };

  auto worker = [&] {
    for (;;) {
      long long j = next.fetch_add(1);
      if (j >= njobs) return;
      if (have[j]) continue;
      if (task.wall_limit_ms && elapsed_ms() > task.wall_limit_ms) {
        out_of_time.store(true);
        return;
      }
      if (task.coset_limit && done_emb.load() >= task.coset_limit) {
        out_of_budget.store(true);
        return;
      }
      RangeAcc acc;
      for (int t : cx.thresholds) acc.tallies[t] = 0;
      if (task.mode == PruneMode::stream) {
        StreamWalk walk(cx, sc, acc);
        walk.descend(0, static_cast<int>(j) + 1);
      } else {
        long long beg = j * kChunk;
        long long end = std::min<long long>(images.size(), beg + kChunk);
        int img[24];
        for (long long i = beg; i < end; ++i) {
          int nb = 0;
          images[i].for_each([&](int p) { img[nb++] = p; });
          eval_images(cx, img, nb, weight, acc);
        }
      }
      results[j] = std::move(acc);
      have[j] = 1;
      done_emb += results[j].embeddings;
      if (ck.is_open()) {
        std::lock_guard<std::mutex> lk(ckmu);
        ck << "range " << j << ' ' << j + 1 << " best " << results[j].best
           << " emb " << results[j].embeddings << " vio " << results[j].fastvio
           << " tallies " << tallies_text(results[j].tallies) << " wall "
           << elapsed_ms() << "\n";
        ck.flush();
      }
    }
  };

  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const std::string tail =
      task.checkpoint.empty() ? "" : "; progress checkpointed";
  if (out_of_time.load()) fail("scan_pair: wall-clock budget exceeded" + tail);
  if (out_of_budget.load())
    fail("scan_pair: embedding budget exhausted" + tail);

  for (long long j = 0; j < njobs; ++j) {
    const RangeAcc& acc = results[j];
    res.embeddings += acc.embeddings;
    res.fastpath_violations += acc.fastvio;
    for (const auto& [t, c] : acc.tallies) res.tallies[t] += c;
    if (acc.best > res.max_middle) res.max_middle = acc.best;
  }
  for (long long j = 0; j < njobs; ++j) {
    const RangeAcc& acc = results[j];
    bool take = task.collect_size >= 0 || acc.best == res.max_middle;
    if (!take) continue;
    res.witnesses.insert(res.witnesses.end(), acc.wits.begin(), acc.wits.end());
    if (acc.truncated) res.witnesses_truncated = true;
  }
  std::sort(res.witnesses.begin(), res.witnesses.end());
  res.witnesses.erase(std::unique(res.witnesses.begin(), res.witnesses.end()),
                      res.witnesses.end());
  if (res.witnesses.size() > task.witness_limit) {
    res.witnesses.resize(task.witness_limit);
    res.witnesses_truncated = true;
  }

  require(res.embeddings == static_cast<long long>(gl_order(nl)),
          "scan_pair: embedding count does not match the group order");

  std::uint64_t h = 0;
  h = mix64(h, static_cast<std::uint64_t>(res.max_middle + 1));
  h = mix64(h, static_cast<std::uint64_t>(res.embeddings));
  for (const auto& [t, c] : res.tallies) {
    h = mix64(h, static_cast<std::uint64_t>(t));
    h = mix64(h, static_cast<std::uint64_t>(c));
  }
  h = mix64(h, static_cast<std::uint64_t>(res.fastpath_violations));
  res.digest = h;
  return res;
}

}  // namespace capkit

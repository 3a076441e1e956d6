import pytest

import chain_worker
from chain_progress import ChainProgressCache, ChainStatus
from chain_worker import ChainPool, run_chains
from conftest import random_graph
from models.state import StateInvariantError
from schemas.sampler import SamplerConfig


class TestChainProgressCache:
    def test_progress_lifecycle(self):
        cache = ChainProgressCache()
        cache.set_progress(0, ChainStatus.PENDING, "Queued")
        cache.set_progress(1, ChainStatus.RUNNING, "Working", step=400, total_steps=1000, best=-12.5)
        assert set(cache.get_all_active()) == {0, 1}
        assert cache.get_progress(1).progress_percentage == 40

        cache.set_progress(1, ChainStatus.COMPLETED, "Done")
        progress = cache.get_progress(1)
        assert progress.status == ChainStatus.COMPLETED
        assert progress.progress_percentage == 100
        assert progress.step == 400
        assert progress.best_log_posterior == -12.5

        stats = cache.get_stats()
        assert stats["total_chains"] == 2
        assert stats["by_status"] == {"pending": 1, "completed": 1}
        assert stats["active_chains"] == 1
        assert stats["best_log_posterior"] == -12.5

    def test_failure_keeps_last_reported_position(self):
        cache = ChainProgressCache()
        cache.set_progress(3, ChainStatus.RUNNING, "Working", step=700, total_steps=1000, best=-4.0)
        cache.set_progress(3, ChainStatus.FAILED, "Chain failed", error="bad state")
        progress = cache.get_progress(3)
        assert progress.error_details == "bad state"
        assert progress.step == 700
        assert progress.progress_percentage == 70
        assert cache.get_all_active() == {}

    def test_restarting_a_chain_does_not_rewind_it(self):
        cache = ChainProgressCache()
        cache.set_progress(0, ChainStatus.RUNNING, "Working", step=250, total_steps=500)
        cache.set_progress(0, ChainStatus.RUNNING, "Worker 2 started chain", total_steps=500)
        assert cache.get_progress(0).step == 250


class TestChainPool:
    def test_traces_are_ordered_and_distinct(self):
        graph = random_graph(20, 0.25, seed=4)
        traces = run_chains(graph, SamplerConfig(k=2, steps=3000, seed=11, thin=20), chains=3, num_workers=2)
        assert [trace.chain_id for trace in traces] == [0, 1, 2]
        series = [[record.sizes for record in trace.records] for trace in traces]
        assert series[0] != series[1] and series[1] != series[2]

    def test_pool_matches_sequential_runs(self):
        graph = random_graph(15, 0.3, seed=5)
        cfg = SamplerConfig(k=3, steps=2000, seed=2, thin=15)
        pooled = ChainPool(num_workers=2).run_chains(graph, cfg, chains=2)
        assert pooled == [chain_worker.run(graph, cfg, chain_id=i) for i in range(2)]

    def test_progress_is_recorded(self):
        pool = ChainPool(num_workers=2)
        pool.run_chains(random_graph(10, 0.3, seed=6), SamplerConfig(k=2, steps=500, progress_interval=100), chains=2)
        stats = pool.get_stats()
        assert stats["by_status"] == {"completed": 2}
        assert pool.progress_cache.get_progress(0).step == 500

    def test_chain_failure_is_raised_after_all_chains_finish(self, monkeypatch):
        real_run = chain_worker.run

        def failing_run(graph, cfg, chain_id=0, progress=None):
            if chain_id == 1:
                raise StateInvariantError("drift detected")
            return real_run(graph, cfg, chain_id=chain_id, progress=progress)

        monkeypatch.setattr(chain_worker, "run", failing_run)
        pool = ChainPool(num_workers=2)
        with pytest.raises(StateInvariantError, match="drift"):
            pool.run_chains(random_graph(10, 0.3, seed=7), SamplerConfig(k=2, steps=200), chains=3)
        assert pool.progress_cache.get_progress(1).status == ChainStatus.FAILED
        assert pool.progress_cache.get_progress(2).status == ChainStatus.COMPLETED

"""
Queue-based worker pool that runs independent chains over one shared graph.
Each chain owns its ModelState and RNG; results are merged after all chains finish.
"""

import threading
import queue
import logging
from typing import Dict, Any, List, Optional
from dataclasses import dataclass

from tqdm import tqdm

import config
from models.graph import Graph
from schemas.sampler import SamplerConfig
from sampler import Trace, run
from chain_progress import ChainProgressCache, ChainStatus

logger = logging.getLogger(__name__)


@dataclass
class ChainTask:
    """One chain to run"""
    chain_id: int
    graph: Graph
    config: SamplerConfig


class ChainWorker:
    """Worker that takes chain tasks from a queue and runs them to completion"""

    def __init__(self, worker_id: int, progress_cache: ChainProgressCache, show_progress: bool = False):
        self.worker_id = worker_id
        self.progress_cache = progress_cache
        self.show_progress = show_progress
        self.is_running = False

    def process_chain(self, task: ChainTask) -> Trace:
        chain_id = task.chain_id
        total = task.config.steps
        bar = tqdm(total=total, desc=f"chain {chain_id}", position=chain_id,
                   leave=False, disable=not self.show_progress)
        last = [0]

        def report(step: int, steps: int, best: float) -> None:
            self.progress_cache.set_progress(chain_id, ChainStatus.RUNNING, f"Worker {self.worker_id} at step {step}",
                                             step=step, total_steps=steps, best=best)
            bar.update(step - last[0])
            last[0] = step

        logger.info(f"Worker {self.worker_id} processing chain {chain_id}")
        self.progress_cache.set_progress(chain_id, ChainStatus.RUNNING, f"Worker {self.worker_id} started chain",
                                         total_steps=total)
        try:
            trace = run(task.graph, task.config, chain_id=chain_id, progress=report)
        finally:
            bar.close()
        self.progress_cache.set_progress(chain_id, ChainStatus.COMPLETED, "Chain completed", step=total,
                                         best=trace.map_state.log_posterior)
        return trace

    def run(self, task_queue: queue.Queue, results: Dict[int, Trace], errors: Dict[int, BaseException]):
        """Main worker loop - runs in separate thread"""
        self.is_running = True
        logger.debug(f"Worker {self.worker_id} started")

        while self.is_running:
            task = task_queue.get()
            if task is None:  # Shutdown signal
                task_queue.task_done()
                break
            try:
                results[task.chain_id] = self.process_chain(task)
            except Exception as e:
                logger.error(f"Worker {self.worker_id}: chain {task.chain_id} failed: {e}")
                self.progress_cache.set_progress(task.chain_id, ChainStatus.FAILED, "Chain failed", error=str(e))
                errors[task.chain_id] = e
            finally:
                task_queue.task_done()

        self.is_running = False
        logger.debug(f"Worker {self.worker_id} stopped")


class ChainPool:
    """Runs a batch of chains on a fixed number of worker threads"""

    def __init__(self, num_workers: int = config.CHAIN_WORKERS, show_progress: bool = False):
        self.num_workers = max(1, num_workers)
        self.show_progress = show_progress
        self.progress_cache = ChainProgressCache()

    def run_chains(self, graph: Graph, sampler_config: SamplerConfig, chains: int) -> List[Trace]:
        """
        Run `chains` independent chains and return their traces ordered by chain id.

        Raises:
            The first chain error, after every worker has drained the queue
        """
        task_queue: queue.Queue = queue.Queue()
        results: Dict[int, Trace] = {}
        errors: Dict[int, BaseException] = {}

        for chain_id in range(chains):
            self.progress_cache.set_progress(chain_id, ChainStatus.PENDING, "Queued")
            task_queue.put(ChainTask(chain_id=chain_id, graph=graph, config=sampler_config))

        workers = min(self.num_workers, chains)
        threads = []
        for i in range(workers):
            worker = ChainWorker(worker_id=i + 1, progress_cache=self.progress_cache,
                                 show_progress=self.show_progress)
            thread = threading.Thread(target=worker.run, args=(task_queue, results, errors),
                                      daemon=True, name=f"ChainWorker-{i + 1}")
            threads.append(thread)
            task_queue.put(None)
            thread.start()
        logger.info(f"Started {workers} chain workers for {chains} chains")

        for thread in threads:
            thread.join()

        if errors:
            first = min(errors)
            raise errors[first]
        logger.info(f"All chains finished: {self.get_stats()}")
        return [results[chain_id] for chain_id in sorted(results)]

    def get_stats(self) -> Dict[str, Any]:
        return self.progress_cache.get_stats()


def run_chains(graph: Graph, sampler_config: SamplerConfig, chains: int = 1,
               num_workers: Optional[int] = None, show_progress: bool = False) -> List[Trace]:
    """Run independent chains through a ChainPool"""
    pool = ChainPool(num_workers=num_workers or config.CHAIN_WORKERS, show_progress=show_progress)
    return pool.run_chains(graph, sampler_config, chains)

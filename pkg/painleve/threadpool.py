# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

"""
ThreadPool module for painleve based on WorkerPool
"""
import sys
import time
import queue
import threading
import traceback

import tqdm
import workerpool

from painleve import exception
from painleve.logger import log


class DaemonWorker(workerpool.workers.Worker):
    """
    Worker that sets daemon = True by default and communicates exceptions to
    the parent pool object by adding them to the pool's exception queue
    """
    def __init__(self, *args, **kwargs):
        super(DaemonWorker, self).__init__(*args, **kwargs)
        self.daemon = True

    def run(self):
        "Get jobs from the queue and perform them as they arrive."
        while True:
            job = self.jobs.get()
            try:
                job.run()
            except workerpool.exceptions.TerminationNotice:
                break
            except Exception as e:
                tb_msg = traceback.format_exc()
                jid = job.jobid
                if jid is None:
                    jid = str(threading.get_ident())
                self.jobs.store_exception([e, tb_msg, jid])
            finally:
                self.jobs.task_done()


def _worker_factory(parent):
    return DaemonWorker(parent)


class SimpleJob(workerpool.jobs.SimpleJob):
    """
    Job whose result is stored as a (jobid, result) pair
    """
    def __init__(self, method, args=None, kwargs=None, jobid=None,
                 results_queue=None):
        if args is None:
            args = []
        elif not isinstance(args, (list, tuple)):
            args = [args]
        self.method = method
        self.args = args
        self.kwargs = kwargs or {}
        self.jobid = jobid
        self.results_queue = results_queue

    def run(self):
        r = self.method(*self.args, **self.kwargs)
        if self.results_queue is not None:
            self.results_queue.put((self.jobid, r))
        return r


class ThreadPool(workerpool.WorkerPool):
    def __init__(self, size=1, maxjobs=0, worker_factory=_worker_factory,
                 disable_threads=False, progress=True):
        self.disable_threads = disable_threads
        self.progress = progress
        self._exception_queue = queue.Queue()
        self._results_queue = queue.Queue()
        if self.disable_threads:
            size = 0
        workerpool.WorkerPool.__init__(self, size, maxjobs, worker_factory)

    def simple_job(self, method, args=None, kwargs=None, jobid=None):
        job = SimpleJob(method, args, kwargs, jobid,
                        results_queue=self._results_queue)
        if not self.disable_threads:
            return self.put(job)
        try:
            return job.run()
        except Exception as e:
            self.store_exception([e, traceback.format_exc(), jobid])

    def get_results(self):
        results = []
        for i in range(self._results_queue.qsize()):
            results.append(self._results_queue.get())
        return results

    def map(self, fn, *seq, **kwargs):
        """
        Uses the threadpool to return the (jobid, result) pairs of applying
        the function to the items of the argument sequence(s). If more than one
        sequence is given, the function is called with an argument list
        consisting of the corresponding item of each sequence.

        If the kwarg jobid_fn is specified then each threadpool job will be
        assigned a jobid based on the return value of jobid_fn(*item);
        otherwise the item's position is used. Results come back sorted by
        jobid.
        """
        if self._results_queue.qsize() > 0:
            self.get_results()
        args = list(zip(*seq))
        jobid_fn = kwargs.get('jobid_fn')
        for i, item in enumerate(args):
            jobid = jobid_fn(*item) if jobid_fn else i
            self.simple_job(fn, item, jobid=jobid)
        results = self.wait(numtasks=len(args))
        return sorted(results, key=lambda r: r[0])

    def store_exception(self, e):
        self._exception_queue.put(e)

    def shutdown(self):
        log.debug("Shutting down threads...")
        workerpool.WorkerPool.shutdown(self)
        self.wait(numtasks=self.size(), return_results=False)

    def wait(self, numtasks=None, return_results=True):
        total = self.unfinished_tasks
        if numtasks is not None:
            total = max(numtasks, self.unfinished_tasks)
        disable = not self.progress or self.disable_threads or total == 0
        with tqdm.tqdm(total=total, file=sys.stderr, disable=disable,
                       leave=False) as pbar:
            while self.unfinished_tasks != 0:
                pbar.update(total - self.unfinished_tasks - pbar.n)
                log.debug("unfinished_tasks = %d" % self.unfinished_tasks)
                time.sleep(0.2)
            pbar.update(total - pbar.n)
        self.join()
        exc_queue = self._exception_queue
        if exc_queue.qsize() > 0:
            self.log_exceptions()
            excs = [exc_queue.get() for i in range(exc_queue.qsize())]
            raise exception.ThreadPoolException(
                "An error occurred in ThreadPool", excs)
        if return_results:
            return self.get_results()

    def log_exceptions(self):
        for e, tb_msg, jid in list(self._exception_queue.queue):
            log.debug("job %s failed:\n%s" % (jid, tb_msg))
            log.error("job %s failed: %s" % (jid, e))


def get_thread_pool(size=10, worker_factory=_worker_factory,
                    disable_threads=False, progress=True):
    return ThreadPool(size=size, worker_factory=worker_factory,
                      disable_threads=disable_threads, progress=progress)

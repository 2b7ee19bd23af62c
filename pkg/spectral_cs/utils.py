"""
Utilities: ordered parallel evaluation and grid specifications.
"""
import concurrent.futures
import math
import os

import numpy as np

from spectral_cs.errors import ParseError


#: environment variable capping the number of worker threads
THREADS_ENV = 'SPECTRAL_CS_THREADS'
DEFAULT_THREADS = 4


def thread_count(threads=None):
    """ Worker count: ``threads`` if given, else min(4, cpu count), capped
        by ``$SPECTRAL_CS_THREADS`` when that is set.
    """
    if threads is not None and threads < 1:
        raise ParseError('thread count must be positive, got %r' % threads)
    env = os.environ.get(THREADS_ENV)
    if threads is None:
        threads = min(DEFAULT_THREADS, os.cpu_count() or 1)
    if env is None:
        return threads
    try:
        cap = int(env)
    except ValueError:
        raise ParseError('%s must be a positive integer, got %r' % (THREADS_ENV, env))
    if cap < 1:
        raise ParseError('%s must be a positive integer, got %r' % (THREADS_ENV, env))
    return min(threads, cap)


def parallel_map(func, items, threads=None):
    """ ``[func(x) for x in items]``, evaluated on a thread pool.

        Results come back in the order of ``items`` whatever order the
        workers finish in.

        >>> parallel_map(abs, [-3, 1, -2], threads=2)
        [3, 1, 2]
    """
    items = list(items)
    threads = min(thread_count(threads), len(items))
    if threads <= 1:
        return [func(x) for x in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def parse_axis(spec):
    """ Parse one grid axis, ``start:stop:step`` (inclusive) or ``v1/v2/...``.

        >>> parse_axis('-1:1:0.5').tolist()
        [-1.0, -0.5, 0.0, 0.5, 1.0]
        >>> parse_axis('0:1:0.6').tolist()
        [0.0, 0.6]
        >>> parse_axis('0.5/2').tolist()
        [0.5, 2.0]
    """
    spec = spec.strip()
    if not spec:
        raise ParseError('empty grid axis')
    try:
        if ':' in spec:
            start, stop, step = (float(x) for x in spec.split(':'))
            if step <= 0 or stop < start:
                raise ParseError('grid axis %r needs start <= stop and a positive step' % spec)
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return start + step * np.arange(count)
        return np.array([float(x) for x in spec.split('/')])
    except ValueError:
        raise ParseError('cannot parse grid axis %r' % spec)


def parse_grid(spec):
    """ Spectral points from ``"x-axis,y-axis"``, x varying fastest.

        >>> parse_grid('0:1:1,2').tolist()
        [2j, (1+2j)]
    """
    if spec is None or not spec.strip():
        raise ParseError('empty grid specification')
    parts = spec.split(',')
    if len(parts) != 2:
        raise ParseError('grid specification %r must be "x-axis,y-axis"' % spec)
    xs, ys = parse_axis(parts[0]), parse_axis(parts[1])
    if np.any(ys <= 0):
        raise ParseError('grid imaginary parts must be positive, got %r' % ys.tolist())
    return np.array([complex(x, y) for y in ys for x in xs])

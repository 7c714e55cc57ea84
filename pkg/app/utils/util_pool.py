import logging
from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence, TypeVar
from app.core.core_config import settings

logger = logging.getLogger(__name__)

TaskType = TypeVar('TaskType')
ResultType = TypeVar('ResultType')


def run_pool(
    func: Callable[[TaskType], ResultType],
    tasks: Sequence[TaskType],
    workers: Optional[int] = None
) -> List[ResultType]:
    """按輸入順序返回結果；func 必須是模塊級函數（可 pickle）"""
    task_list = list(tasks)
    processes = settings.WORKERS if workers is None else workers
    processes = max(1, min(processes, len(task_list) or 1))

    if processes == 1:
        return [func(task) for task in task_list]

    logger.info(f"running {len(task_list)} tasks on {processes} workers")
    with Pool(processes=processes) as pool:
        return pool.map(func, task_list)

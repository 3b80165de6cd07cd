use_multiprocessing = True

if use_multiprocessing:
    from multiprocessing import Process
    from multiprocessing import Queue
else:
    from threading import Thread as Process
    from queue import Queue

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# logutils.py - Logging setup for PairSpan
#
#####################################################
# OVERVIEW:
#
#   One ArgLogger per tool, with a stream handler at INFO and, on request,
#   a file handler at DEBUG. The logger keeps the most recent output lines
#   and the most recent debug lines, its own and those of the PairSpan.*
#   module loggers, so that a failed verification can show what led up to it.
######################################################
"""

import sys
import os
import time
import logging
from collections import deque

LOG_FORMAT = '%(asctime)s:%(name)s:%(levelname)s: %(message)s'
RECENT_OUTPUT_LINES = 50
RECENT_DEBUG_LINES = 100


def auto_log_file_name(directory=None, now=None):
    """pairspan-<timestamp>.log in directory (default cwd), with a -N suffix
    if that name is taken"""
    directory = directory or os.getcwd()
    stamp = time.strftime('%Y%m%d%H%M%S', time.localtime(now))
    candidate = os.path.join(directory, "pairspan-%s.log" % stamp)
    suffix = 1
    while os.path.exists(candidate):
        candidate = os.path.join(directory, "pairspan-%s-%d.log" % (stamp, suffix))
        suffix += 1
    return candidate


class ArgLogRecord(logging.LogRecord):
    """Messages are formatted with their args if they fit, else args are appended"""

    def getMessage(self):
        msg = str(self.msg)
        if self.args:
            try:
                msg = msg % self.args
            except TypeError:
                msg += ", ".join([str(x) for x in self.args])
        return msg


class ArgLogger(logging.getLoggerClass()):
    "Logger that remembers its recent output"

    def __init__(self, name, **kwargs):
        logging.Logger.__init__(self, name, **kwargs)
        self.recent = deque(maxlen=RECENT_OUTPUT_LINES)
        self.recent_debug = deque(maxlen=RECENT_DEBUG_LINES)
        self.formatter = logging.Formatter(LOG_FORMAT)

    def remember(self, record):
        line = self.formatter.format(record)
        if record.levelno <= logging.DEBUG:
            self.recent_debug.append(line)
        else:
            self.recent.append(line)

    def makeRecord(self, name, level, fn, lno, msg, args, exc_info,
                   func=None, extra=None, sinfo=None):
        record = ArgLogRecord(name, level, fn, lno, msg, args, exc_info, func=func, sinfo=sinfo)
        for key in (extra or {}):
            record.__dict__[key] = extra[key]
        self.remember(record)
        return record

    def recentOutput(self, include_log=False):
        "INFO and above, oldest first; the debug lines instead when include_log"
        return list(self.recent_debug if include_log else self.recent)


class _ModuleRecordHandler(logging.Handler):
    """Records propagated up from PairSpan.* module loggers go into the
    parent's buffers too"""

    def __init__(self, parent):
        logging.Handler.__init__(self, level=logging.DEBUG)
        self.parent = parent

    def emit(self, record):
        if record.name != self.parent.name:
            self.parent.remember(record)


def addFileHandler(logger, filename=None):
    "Log DEBUG and above to filename, or to an auto-named file in cwd"
    filename = filename or auto_log_file_name()
    fh = logging.FileHandler(filename=filename)
    fh.setLevel(logging.DEBUG)
    fh.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(fh)
    logger.info("Logging to file: %s" % filename)
    return filename


def addStreamHandler(logger, stream):
    ch = logging.StreamHandler(stream)
    ch.setLevel(logging.INFO)
    ch.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(ch)


def getLogger(logger_name, stream=None):
    "The tool's ArgLogger, handlers attached on first call only"
    logging.setLoggerClass(ArgLogger)
    try:
        logger = logging.getLogger(logger_name)
    finally:
        logging.setLoggerClass(logging.Logger)
    if logger.handlers:
        return logger
    addStreamHandler(logger, stream or sys.stderr)
    if isinstance(logger, ArgLogger):
        logger.addHandler(_ModuleRecordHandler(logger))
    logger.setLevel(logging.DEBUG)
    return logger


def getCurrentLogFileName(logger_name):
    "baseFilename of the logger's file handler, None if it has none"
    for hdlr in logging.getLogger(logger_name).handlers:
        if isinstance(hdlr, logging.FileHandler):
            return hdlr.baseFilename
    return None

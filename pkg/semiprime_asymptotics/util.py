#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

import os
import tempfile


def check_config_dict_empty(dct, name):
    """Ensure that no keys are left in a configuration dict"""
    if dct:
        from semiprime_asymptotics.config import ConfigError
        raise ConfigError('Extra keys in configuration for %s: %s' %
                          (name, ', '.join(sorted(dct))))


def atomic_write(path, contents, encoding='utf-8'):
    """Write contents (str or bytes) so that readers never see a torn file

    The data goes to a temporary file in the target directory which is
    then renamed over the destination.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix='.semiprime.', dir=directory)
    try:
        if isinstance(contents, bytes):
            with os.fdopen(fd, 'wb') as f:
                f.write(contents)
        else:
            with os.fdopen(fd, 'w', encoding=encoding, newline='') as f:
                f.write(contents)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise

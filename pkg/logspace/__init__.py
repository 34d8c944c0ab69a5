import pkg_resources


__version__ = pkg_resources.resource_string('logspace', 'VERSION').decode('utf-8').strip()

import pbr.version

__version__ = pbr.version.VersionInfo('relu-init').version_string()
